#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok((cx, _)) = mackeykit::io::complex_from_json(s) {
            for n in cx.degrees() {
                let _ = cx.homology(n);
            }
        }
    }
});
