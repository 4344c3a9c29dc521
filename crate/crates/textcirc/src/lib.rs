//! Compile hybrid-grammar texts in restricted fragments of English and Urdu
//! into text circuits, check that corresponding texts in the two languages
//! compile to the same circuit up to a gate-label dictionary, and reverse the
//! pipeline to generate text from freely sampled circuits.
//!
//! The pipeline runs in three stages:
//!
//! 1. **Hybrid grammar** ([`grammar`], [`hybrid`]): syntax trees derived from
//!    a per-language generator set, plus pronominal links between noun
//!    occurrences and fusion of linked sentences into relative clauses.
//! 2. **Text diagrams** ([`diagram`]): sentence types are eliminated in favor
//!    of noun wires, phrase scope becomes nested boxes, pronominal links
//!    become shared wires, and copula constructions are reduced away.
//! 3. **Text circuits** ([`circuit`]): the final form — noun wires threaded
//!    through a partially ordered set of gates and boxes, with a canonical
//!    serialization that quotients out interchange of causally independent
//!    elements.
//!
//! [`translate`] maps trees and whole texts between the languages through a
//! bidirectional lexicon and verifies that compilation commutes with
//! translation. [`generate`] samples free circuits and realizes them as text
//! in either language. [`io`] holds parsers, serializers and renderers for
//! all external formats.
//!
//! ```
//! use textcirc::{compile_to_canonical, Language};
//! use textcirc::io::parse_hybrid_text;
//!
//! let english = parse_hybrid_text(
//!     "(S (NP#1 John) (TVP reads) (NP#2 books))",
//!     Language::English,
//! )?;
//! let urdu = parse_hybrid_text(
//!     "(S (NP#1 John) (NP#2 kitabein) (TVP \"parhta hai\"))",
//!     Language::Urdu,
//! )?;
//!
//! // Subject-verb-object and subject-object-verb order compile to the same
//! // circuit shape; only the gate labels differ.
//! assert_eq!(
//!     compile_to_canonical(&english)?,
//!     "wires:[1=John,2=books];elements:[tv(reads;1,2)]"
//! );
//! assert_eq!(
//!     compile_to_canonical(&urdu)?,
//!     "wires:[1=John,2=kitabein];elements:[tv(parhta hai;1,2)]"
//! );
//!
//! let report = textcirc::verify_commuting(&english, textcirc::fixtures::lexicon())?;
//! assert!(report.equal);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod circuit;
pub mod compile;
pub mod diagram;
pub mod fixtures;
pub mod generate;
pub mod grammar;
pub mod hybrid;
pub mod io;
pub mod translate;

pub use circuit::TextCircuit;
pub use compile::{compile_text, compile_to_canonical, CompileError};
pub use grammar::{derive, linearize, validate, EntityId, GeneratorTable, Language, SyntaxTree};
pub use hybrid::HybridText;
pub use translate::{translate_text, translate_tree, verify_commuting, Direction, Lexicon};
