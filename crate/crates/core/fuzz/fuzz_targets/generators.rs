#![no_main]

use libfuzzer_sys::fuzz_target;
use sldkit::pauli::{format_generators, parse_generators};

fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let d = [2, 3, 5, 7][(head & 3) as usize];
    if let Ok(group) = parse_generators(text, d) {
        let again = parse_generators(&format_generators(&group), d).unwrap();
        assert_eq!(again.generators(), group.generators());
    }
});
