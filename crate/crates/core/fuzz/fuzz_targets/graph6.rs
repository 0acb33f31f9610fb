#![no_main]

use libfuzzer_sys::fuzz_target;
use sldkit::graph::{parse_graph6, to_graph6};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph6(text) {
        assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }
});
