#![no_main]

use libfuzzer_sys::fuzz_target;
use xygp::pulse::PulseSequence;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((seq, sys)) = PulseSequence::from_json(text) {
        let again = seq.to_json(&sys).expect("parsed sequence serializes");
        let (back, sys2) = PulseSequence::from_json(&again).expect("own output parses");
        assert_eq!(back, seq);
        assert_eq!(sys2, sys);
    }
});
