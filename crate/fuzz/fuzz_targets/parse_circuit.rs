#![no_main]

use libfuzzer_sys::fuzz_target;
use textcirc::io::{parse_circuit, render_ascii, render_dot, serialize_circuit};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(circuit) = parse_circuit(input) {
        let serialized = serialize_circuit(&circuit);
        let reparsed = parse_circuit(&serialized).expect("serialized circuit parses");
        assert_eq!(reparsed, circuit);
        // Canonical form is itself valid exchange syntax.
        let canonical = circuit
            .canonicalize()
            .expect("accepted circuit canonicalizes");
        let from_canonical = parse_circuit(&canonical).expect("canonical form parses");
        assert_eq!(
            from_canonical.canonicalize().expect("canonicalizes again"),
            canonical
        );
        let _ = render_dot(&circuit);
        let _ = render_ascii(&circuit);
    }
});
