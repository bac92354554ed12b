#![no_main]
use libfuzzer_sys::fuzz_target;

// Accepted direction sets must survive a write/read round trip unchanged.
fuzz_target!(|data: &[u8]| {
    if let Ok(set) = elliproj::io::read_direction_set(data) {
        let mut buf = Vec::new();
        elliproj::io::write_direction_set(&mut buf, &set).unwrap();
        let back = elliproj::io::read_direction_set(buf.as_slice()).unwrap();
        assert_eq!(back, set);
    }
});
