#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = mackeykit::io::green_from_json(s) {
            mackeykit::io::green_from_json(&mackeykit::io::green_to_json(&r)).expect("emitted Green functor reloads");
        }
    }
});
