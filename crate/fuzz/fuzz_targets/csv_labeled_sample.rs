#![no_main]
use libfuzzer_sys::fuzz_target;

// Anything the labeled-sample parser accepts must satisfy its own
// invariants: binary labels, one per feature row.
fuzz_target!(|data: &[u8]| {
    if let Ok(labeled) = elliproj::io::read_labeled_sample(data) {
        assert_eq!(labeled.labels().len(), labeled.n());
        assert!(labeled.labels().iter().all(|&l| l <= 1));
        let mut buf = Vec::new();
        elliproj::io::write_sample(&mut buf, labeled.features()).unwrap();
        let back = elliproj::io::read_sample(buf.as_slice()).unwrap();
        assert_eq!(&back, labeled.features());
    }
});
