#![no_main]

use freeclt::wire::{descriptor_to_json, parse_descriptor};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_descriptor(text) {
        let again = parse_descriptor(&descriptor_to_json(&m)).expect("emitted descriptor must parse");
        assert_eq!(again, m);
    }
});
