#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = mackeykit::io::gset_from_json(s) {
            let again = mackeykit::io::gset_from_json(&mackeykit::io::gset_to_json(&x)).expect("emitted G-set reloads");
            assert_eq!(again.size(), x.size());
        }
    }
});
