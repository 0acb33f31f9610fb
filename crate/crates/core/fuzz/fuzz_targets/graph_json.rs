#![no_main]

use libfuzzer_sys::fuzz_target;
use sldkit::graph::{parse_graph_json, GraphDump};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph_json(text) {
        let again = serde_json::to_string(&GraphDump::from(&g)).unwrap();
        assert_eq!(parse_graph_json(&again).unwrap(), g);
    }
});
