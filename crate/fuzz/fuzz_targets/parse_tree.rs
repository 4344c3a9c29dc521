#![no_main]

use libfuzzer_sys::fuzz_target;
use textcirc::grammar::{GeneratorTable, Language};
use textcirc::io::{parse_tree, serialize_tree};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(tree) = parse_tree(input) {
        // Accepted trees must survive a serialize/parse round trip.
        let serialized = serialize_tree(&tree);
        let reparsed = parse_tree(&serialized).expect("serialized tree parses");
        assert_eq!(reparsed, tree);
        // Downstream passes must not panic on arbitrary accepted trees.
        for language in [Language::English, Language::Urdu] {
            let _ = textcirc::validate(&tree, &GeneratorTable::bare(language));
        }
        let _ = textcirc::linearize(&tree);
    }
});
