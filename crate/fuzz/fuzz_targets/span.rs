#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = mackeykit::io::span_from_json(s) {
            let again = mackeykit::io::span_from_json(&mackeykit::io::span_to_json(&e)).expect("emitted span reloads");
            assert!(again == e);
        }
    }
});
