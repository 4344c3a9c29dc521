#![no_main]

use libfuzzer_sys::fuzz_target;
use textcirc::compile::compile_text;
use textcirc::grammar::Language;
use textcirc::io::{parse_hybrid_text, serialize_hybrid_text};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(text) = parse_hybrid_text(input, Language::English) {
        let serialized = serialize_hybrid_text(&text);
        let reparsed =
            parse_hybrid_text(&serialized, text.language).expect("serialized text parses");
        assert_eq!(reparsed, text);
        // Compilation may reject the text but must not panic; accepted
        // circuits must canonicalize.
        if let Ok(circuit) = compile_text(&text) {
            circuit
                .canonicalize()
                .expect("compiled circuit canonicalizes");
        }
    }
});
