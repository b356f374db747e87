#![no_main]

use libfuzzer_sys::fuzz_target;
use tmes_core::{make_state, StateSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = text.parse::<StateSpec>() else { return };
    assert_eq!(spec.to_string().parse::<StateSpec>().expect("display re-parses"), spec);
    if let Ok(state) = make_state(&spec) {
        assert!((state.norm_sqr() - 1.0).abs() < 1e-9);
    }
});
