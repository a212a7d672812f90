#![no_main]

use freeclt::wire::{parse_polynomial, polynomial_to_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polynomial(text) {
        let again = parse_polynomial(&polynomial_to_string(&p)).expect("emitted polynomial must parse");
        assert_eq!(again, p);
    }
});
