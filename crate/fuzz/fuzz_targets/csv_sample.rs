#![no_main]
use libfuzzer_sys::fuzz_target;

// Accepted samples must survive a write/read round trip unchanged.
fuzz_target!(|data: &[u8]| {
    if let Ok(sample) = elliproj::io::read_sample(data) {
        let mut buf = Vec::new();
        elliproj::io::write_sample(&mut buf, &sample).unwrap();
        let back = elliproj::io::read_sample(buf.as_slice()).unwrap();
        assert_eq!(back, sample);
    }
});
