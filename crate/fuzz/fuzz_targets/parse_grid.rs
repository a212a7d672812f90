#![no_main]

use freeclt::wire::{grid_to_string, parse_grid};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_grid(text) {
        assert_eq!(parse_grid(&grid_to_string(&g)).expect("emitted grid must parse"), g);
    }
});
