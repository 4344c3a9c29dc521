//! Parsers and serializers for every external format: bracketed trees,
//! hybrid-text files, lexicon files, the circuit exchange format, and the
//! DOT/ASCII circuit renderers.
//!
//! All formats are UTF-8 with LF line endings; Urdu is transliterated and
//! written left to right. Parse errors carry 1-based line and column
//! positions.

pub mod ascii;
pub mod circuit_fmt;
pub mod dot;
pub mod lexicon_fmt;
pub mod text;
pub mod tree;

pub use ascii::{render_ascii, render_ascii_with, AsciiStyle};
pub use circuit_fmt::{parse_circuit, serialize_circuit};
pub use dot::render_dot;
pub use lexicon_fmt::{parse_lexicon, serialize_lexicon};
pub use text::{parse_hybrid_text, serialize_hybrid_text};
pub use tree::{parse_tree, serialize_tree};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: lexical error: {message}")]
    Lex {
        line: u32,
        col: u32,
        message: String,
    },

    #[error("{line}:{col}: unbalanced parentheses")]
    UnbalancedParens { line: u32, col: u32 },

    #[error("{line}:{col}: bad entity index {token:?} (indices are positive integers)")]
    BadEntityIndex { line: u32, col: u32, token: String },

    #[error("{line}:{col}: {message}")]
    Format {
        line: u32,
        col: u32,
        message: String,
    },
}

impl ParseError {
    pub fn line(&self) -> u32 {
        match self {
            ParseError::Lex { line, .. }
            | ParseError::UnbalancedParens { line, .. }
            | ParseError::BadEntityIndex { line, .. }
            | ParseError::Format { line, .. } => *line,
        }
    }
}
