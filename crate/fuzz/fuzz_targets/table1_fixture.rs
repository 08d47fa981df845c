#![no_main]

use libfuzzer_sys::fuzz_target;
use xygp::harness::{parse_table1, run_table1};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rows) = parse_table1(text) {
        assert!(!rows.is_empty());
        // Rows on the level crossing are rejected, never panic.
        let _ = run_table1(&rows);
    }
});
