#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftpart::SourceMeasure;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = SourceMeasure::parse_density_grid(text) {
        // whatever parses must survive a round trip
        let again = SourceMeasure::parse_density_grid(&m.to_density_text()).expect("emitted grid parses");
        assert_eq!(again.bounds(), m.bounds());
    }
});
