//! Built-in lexicon and vocabularies covering the running examples; used for
//! label sampling in generation and as the default dictionary in tests and
//! the CLI.

use std::sync::OnceLock;

use crate::grammar::{GeneratorTable, Language, Vocabulary};
use crate::io::lexicon_fmt::parse_lexicon;
use crate::translate::Lexicon;

/// The shipped dictionary, also available as `fixtures/lexicon_en_ur.tsv`.
pub const LEXICON_TSV: &str = include_str!("../fixtures/lexicon_en_ur.tsv");

pub fn lexicon() -> &'static Lexicon {
    static LEXICON: OnceLock<Lexicon> = OnceLock::new();
    LEXICON.get_or_init(|| parse_lexicon(LEXICON_TSV).expect("shipped lexicon parses"))
}

pub fn vocabulary(language: Language) -> &'static Vocabulary {
    static EN: OnceLock<Vocabulary> = OnceLock::new();
    static UR: OnceLock<Vocabulary> = OnceLock::new();
    match language {
        Language::English => EN.get_or_init(|| lexicon().vocabulary(Language::English)),
        Language::Urdu => UR.get_or_init(|| lexicon().vocabulary(Language::Urdu)),
    }
}

/// Generator table with the fixture vocabulary installed.
pub fn table(language: Language) -> GeneratorTable {
    GeneratorTable::with_vocabulary(language, vocabulary(language).clone())
}
