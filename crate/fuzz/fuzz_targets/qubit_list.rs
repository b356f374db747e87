#![no_main]

use libfuzzer_sys::fuzz_target;
use tmes_core::partition::parse_qubit_list;
use tmes_core::Partition;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(qubits) = parse_qubit_list(text) else { return };
    for n in 1..=8 {
        if let Ok(p) = Partition::from_sender(&qubits, n) {
            assert_eq!(p.sender().len() + p.receiver().len(), n);
        }
    }
});
