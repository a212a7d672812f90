#![no_main]

use freeclt::wire::{parse_sequence, sequence_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(seq) = parse_sequence(text) {
        let again = parse_sequence(&sequence_to_json(&seq)).expect("emitted sequence must parse");
        assert_eq!(again, seq);
    }
});
