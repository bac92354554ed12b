#![no_main]
use libfuzzer_sys::fuzz_target;

// Accepted distribution specs must survive a write/read round trip
// unchanged; the re-read revalidates positive definiteness.
fuzz_target!(|data: &[u8]| {
    if let Ok(spec) = elliproj::io::read_elliptical_spec(data) {
        let mut buf = Vec::new();
        elliproj::io::write_elliptical_spec(&mut buf, &spec).unwrap();
        let back = elliproj::io::read_elliptical_spec(buf.as_slice()).unwrap();
        assert_eq!(back, spec);
    }
});
