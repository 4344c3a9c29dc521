#![no_main]

use libfuzzer_sys::fuzz_target;
use textcirc::io::{parse_lexicon, serialize_lexicon};
use textcirc::translate::Direction;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lexicon) = parse_lexicon(input) {
        let serialized = serialize_lexicon(&lexicon);
        let reparsed = parse_lexicon(&serialized).expect("serialized lexicon parses");
        assert_eq!(reparsed, lexicon);
        // Per-category bijection: translating twice is the identity.
        for entry in lexicon.entries() {
            let there = lexicon
                .translate_word(entry.cat, &entry.english, Direction::EnglishToUrdu)
                .expect("entry translates");
            let back = lexicon
                .translate_word(entry.cat, there, Direction::UrduToEnglish)
                .expect("entry translates back");
            assert_eq!(back, entry.english);
        }
    }
});
