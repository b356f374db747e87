#![no_main]

use libfuzzer_sys::fuzz_target;
use tmes_core::io::Document;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = Document::parse(text) else { return };
    let again = doc.to_json();
    assert_eq!(Document::parse(&again).expect("re-parse"), doc);
    let _ = doc.clone().into_state();
    let _ = doc.clone().into_operator();
    let _ = doc.into_operator_set();
});
