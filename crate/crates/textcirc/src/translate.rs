//! Structural translation between the two languages: the same rule is applied
//! at every node with the target language's child order, leaves are mapped
//! through a bidirectional lexicon, and entity indices are preserved. The
//! commuting-diagram verifier checks that translation followed by compilation
//! lands on the same circuit as compiling directly.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::circuit::{equal_up_to_dictionary, CircuitError};
use crate::compile::{compile_text, CompileError};
use crate::grammar::{
    validate, GeneratorTable, Language, LexCat, NodeLabel, SyntaxTree, ValidationReport, Vocabulary,
};
use crate::hybrid::{HybridText, NpOccurrence, PronominalLink};

/// Direction of a translation pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    EnglishToUrdu,
    UrduToEnglish,
}

impl Direction {
    pub fn source(self) -> Language {
        match self {
            Direction::EnglishToUrdu => Language::English,
            Direction::UrduToEnglish => Language::Urdu,
        }
    }

    pub fn target(self) -> Language {
        match self {
            Direction::EnglishToUrdu => Language::Urdu,
            Direction::UrduToEnglish => Language::English,
        }
    }

    pub fn reversed(self) -> Direction {
        match self {
            Direction::EnglishToUrdu => Direction::UrduToEnglish,
            Direction::UrduToEnglish => Direction::EnglishToUrdu,
        }
    }

    pub fn from_source(language: Language) -> Direction {
        match language {
            Language::English => Direction::EnglishToUrdu,
            Language::Urdu => Direction::UrduToEnglish,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::EnglishToUrdu => write!(f, "e2u"),
            Direction::UrduToEnglish => write!(f, "u2e"),
        }
    }
}

/// One dictionary entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub english: String,
    pub urdu: String,
    pub cat: LexCat,
    /// Noun entries may be flagged as pronouns; generation uses these for
    /// anaphoric mentions only.
    pub pronoun: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexiconError {
    #[error("lexicon is not a bijection for {cat:?}: {word:?} appears twice")]
    NotBijective { cat: LexCat, word: String },
}

/// Bidirectional English-Urdu word map keyed by lexical category.
///
/// Per category the relation is a bijection on the covered vocabulary, so
/// translating twice is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: Vec<LexEntry>,
    east: BTreeMap<(LexCat, String), String>,
    west: BTreeMap<(LexCat, String), String>,
}

impl Lexicon {
    pub fn from_entries(entries: Vec<LexEntry>) -> Result<Lexicon, LexiconError> {
        let mut east = BTreeMap::new();
        let mut west = BTreeMap::new();
        for entry in &entries {
            if east
                .insert((entry.cat, entry.english.clone()), entry.urdu.clone())
                .is_some()
            {
                return Err(LexiconError::NotBijective {
                    cat: entry.cat,
                    word: entry.english.clone(),
                });
            }
            if west
                .insert((entry.cat, entry.urdu.clone()), entry.english.clone())
                .is_some()
            {
                return Err(LexiconError::NotBijective {
                    cat: entry.cat,
                    word: entry.urdu.clone(),
                });
            }
        }
        Ok(Lexicon {
            entries,
            east,
            west,
        })
    }

    pub fn entries(&self) -> &[LexEntry] {
        &self.entries
    }

    pub fn translate_word(&self, cat: LexCat, word: &str, direction: Direction) -> Option<&str> {
        let map = match direction {
            Direction::EnglishToUrdu => &self.east,
            Direction::UrduToEnglish => &self.west,
        };
        map.get(&(cat, word.to_string())).map(String::as_str)
    }

    /// Vocabulary of one side of the lexicon.
    pub fn vocabulary(&self, language: Language) -> Vocabulary {
        let mut vocab = Vocabulary::new();
        for entry in &self.entries {
            let word = match language {
                Language::English => &entry.english,
                Language::Urdu => &entry.urdu,
            };
            if entry.pronoun {
                vocab.add_pronoun(word.clone());
            } else {
                vocab.add(entry.cat, word.clone());
            }
        }
        vocab
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("source tree does not validate: {0}")]
    ValidationFailure(ValidationReport),

    #[error("no dictionary entry for {cat:?} word {word:?}")]
    MissingDictionaryEntry { cat: LexCat, word: String },

    #[error("link occurrence {0} does not resolve in the source text")]
    BadOccurrence(NpOccurrence),
}

/// Translate a validated tree by applying the corresponding rule at every
/// node in the target order; leaves go through the lexicon, entity indices
/// are untouched.
pub fn translate_tree(
    tree: &SyntaxTree,
    lexicon: &Lexicon,
    direction: Direction,
) -> Result<SyntaxTree, TranslateError> {
    let source_table = GeneratorTable::bare(direction.source());
    let report = validate(tree, &source_table);
    if !report.is_ok() {
        return Err(TranslateError::ValidationFailure(report));
    }
    translate_node(tree, lexicon, direction)
}

fn translate_node(
    node: &SyntaxTree,
    lexicon: &Lexicon,
    direction: Direction,
) -> Result<SyntaxTree, TranslateError> {
    if node.is_leaf() {
        let word = node.word.as_deref().unwrap_or_default();
        let target_word = match node.label {
            NodeLabel::Copula => direction.target().copula_word().to_string(),
            NodeLabel::Rel => direction.target().relative_word().to_string(),
            label => {
                let cat = label.leaf_cat().expect("validated leaf has a category");
                lexicon
                    .translate_word(cat, word, direction)
                    .ok_or_else(|| TranslateError::MissingDictionaryEntry {
                        cat,
                        word: word.to_string(),
                    })?
                    .to_string()
            }
        };
        return Ok(SyntaxTree {
            label: node.label,
            entity_index: node.entity_index,
            word: Some(target_word),
            children: Vec::new(),
        });
    }
    let rule = node
        .rule(direction.source())
        .expect("validated internal node has a rule");
    let mut children: Vec<Option<SyntaxTree>> = vec![None; node.children.len()];
    for pos in 0..rule.arity() {
        let src_idx = rule.child_index(direction.source(), pos);
        let tgt_idx = rule.child_index(direction.target(), pos);
        children[tgt_idx] = Some(translate_node(&node.children[src_idx], lexicon, direction)?);
    }
    Ok(SyntaxTree {
        label: node.label,
        entity_index: None,
        word: None,
        children: children
            .into_iter()
            .map(|c| c.expect("permutation fills every slot"))
            .collect(),
    })
}

/// Map an occurrence path through the per-node child permutations.
fn map_path(tree: &SyntaxTree, path: &[usize], direction: Direction) -> Option<Vec<usize>> {
    let mut node = tree;
    let mut out = Vec::with_capacity(path.len());
    for &idx in path {
        let rule = node.rule(direction.source())?;
        let pos = (0..rule.arity()).find(|&p| rule.child_index(direction.source(), p) == idx)?;
        out.push(rule.child_index(direction.target(), pos));
        node = node.children.get(idx)?;
    }
    Some(out)
}

/// Sentence-wise tree translation; links are carried across with their paths
/// recomputed for the reordered children.
pub fn translate_text(
    text: &HybridText,
    lexicon: &Lexicon,
    direction: Direction,
) -> Result<HybridText, TranslateError> {
    let sentences = text
        .sentences
        .iter()
        .map(|s| translate_tree(s, lexicon, direction))
        .collect::<Result<Vec<_>, _>>()?;
    let links = text
        .links
        .iter()
        .map(|link| {
            let map = |occ: &NpOccurrence| -> Result<NpOccurrence, TranslateError> {
                let sentence = text
                    .sentences
                    .get(occ.sentence)
                    .ok_or_else(|| TranslateError::BadOccurrence(occ.clone()))?;
                let path = map_path(sentence, &occ.path, direction)
                    .ok_or_else(|| TranslateError::BadOccurrence(occ.clone()))?;
                Ok(NpOccurrence::new(occ.sentence, path))
            };
            Ok(PronominalLink {
                referent: map(&link.referent)?,
                anaphor: map(&link.anaphor)?,
                surface: link.surface,
            })
        })
        .collect::<Result<Vec<_>, TranslateError>>()?;
    Ok(HybridText {
        language: direction.target(),
        sentences,
        links,
    })
}

/// Outcome of one commutation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationReport {
    pub equal: bool,
    pub canonical_english: String,
    pub canonical_urdu: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CommuteError {
    #[error(transparent)]
    Compile(#[from] CompileError),

    #[error(transparent)]
    Translate(#[from] TranslateError),

    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Compile the text, translate it, compile the translation, and compare the
/// circuits up to the dictionary.
pub fn verify_commuting(
    text: &HybridText,
    lexicon: &Lexicon,
) -> Result<CommutationReport, CommuteError> {
    let direction = Direction::from_source(text.language);
    let source_circuit = compile_text(text)?;
    let translated = translate_text(text, lexicon, direction)?;
    let target_circuit = compile_text(&translated)?;
    let equal = equal_up_to_dictionary(&source_circuit, &target_circuit, lexicon, direction)?;
    let (canonical_english, canonical_urdu) = match direction {
        Direction::EnglishToUrdu => (
            source_circuit.canonicalize()?,
            target_circuit.canonicalize()?,
        ),
        Direction::UrduToEnglish => (
            target_circuit.canonicalize()?,
            source_circuit.canonicalize()?,
        ),
    };
    Ok(CommutationReport {
        equal,
        canonical_english,
        canonical_urdu,
    })
}
