#![no_main]

use libfuzzer_sys::fuzz_target;
use sldkit::Sld;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sld) = Sld::from_json(text) {
        let _ = sldkit::sld::macwilliams_residuals(&sld);
        let _ = sld.normalized_f64();
        let back = Sld::from_json(&sld.to_json(Default::default())).unwrap();
        assert_eq!(back.values(), sld.values());
    }
});
