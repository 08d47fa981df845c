#![no_main]

use libfuzzer_sys::fuzz_target;
use xygp::harness::{parse_lambda_list, LambdaSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(list) = parse_lambda_list(text) {
        assert!(!list.is_empty() && list.iter().all(|x| x.is_finite()));
        let sorted = LambdaSpec::List(list).values().expect("finite list");
        assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
    }
});
