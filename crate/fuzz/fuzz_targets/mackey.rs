#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = mackeykit::io::mackey_from_json(s) {
            m.validate().expect("loaded functors are valid");
            let again = mackeykit::io::mackey_from_json(&mackeykit::io::mackey_to_json(&m)).expect("emitted functor reloads");
            assert!(again == m);
        }
    }
});
