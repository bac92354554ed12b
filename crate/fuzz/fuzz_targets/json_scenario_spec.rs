#![no_main]
use libfuzzer_sys::fuzz_target;

use elliproj::ScenarioSpec;

// Scenario configs must deserialize, validate without panicking, and
// survive a serialize/deserialize round trip unchanged.
fuzz_target!(|data: &[u8]| {
    if let Ok(spec) = elliproj::io::read_json::<ScenarioSpec, _>(data) {
        let _ = spec.validate();
        let mut buf = Vec::new();
        elliproj::io::write_json_pretty(&mut buf, &spec).unwrap();
        let back: ScenarioSpec = elliproj::io::read_json(buf.as_slice()).unwrap();
        assert_eq!(back, spec);
    }
});
