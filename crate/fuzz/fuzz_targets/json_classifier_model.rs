#![no_main]
use libfuzzer_sys::fuzz_target;

// Accepted models are normalized on read, so writing and re-reading
// must reproduce the in-memory model exactly.
fuzz_target!(|data: &[u8]| {
    if let Ok(model) = elliproj::io::read_classifier(data) {
        let mut buf = Vec::new();
        elliproj::io::write_classifier(&mut buf, &model).unwrap();
        let back = elliproj::io::read_classifier(buf.as_slice()).unwrap();
        assert_eq!(back, model);
    }
});
