#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = mackeykit::io::group_from_json(s) {
            let again = mackeykit::io::group_from_json(&mackeykit::io::group_to_json(&g)).expect("emitted group reloads");
            assert!(*again == *g);
        }
    }
});
