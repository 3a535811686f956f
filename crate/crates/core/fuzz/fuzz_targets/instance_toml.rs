#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftpart::instance::InstanceSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = InstanceSpec::parse(text) {
        let again = InstanceSpec::parse(&spec.emit()).expect("emitted instance parses");
        assert_eq!(again, spec);
    }
});
