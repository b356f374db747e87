#![no_main]

use libfuzzer_sys::fuzz_target;
use tmes_core::operators::{named_operator, NamedOperator};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(name) = text.parse::<NamedOperator>() else { return };
    if let Ok(op) = named_operator(name) {
        assert!(op.is_unitary(1e-12));
    }
});
