#![no_main]

use libfuzzer_sys::fuzz_target;
use sldkit::graph::parse_edge_list;

fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let n = 1 + (head & 0x1f) as usize;
    let d = 2 + (head >> 5) as u32;
    if let Ok(g) = parse_edge_list(text, n, d) {
        assert_eq!(g.n(), n);
        assert_eq!(g.d(), d);
    }
});
