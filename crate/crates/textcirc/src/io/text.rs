//! Hybrid-text file format: one bracketed sentence per line, link lines of
//! the form
//!
//! ```text
//! @link referent=<s>:<path> anaphor=<s>:<path> surface=<kind>
//! ```
//!
//! with 0-based sentence indices and dot-separated child paths, plus an
//! optional `@lang en|ur` directive. Lines starting with `#` are comments.

use crate::grammar::Language;
use crate::hybrid::{add_link, HybridText, LinkSurface, NpOccurrence, PronominalLink};
use crate::io::tree::{parse_tree_at, serialize_tree};
use crate::io::ParseError;

/// Parse a hybrid-text file. `default_language` applies when the file has no
/// `@lang` directive.
pub fn parse_hybrid_text(
    input: &str,
    default_language: Language,
) -> Result<HybridText, ParseError> {
    let mut language = default_language;
    let mut sentences = Vec::new();
    let mut links: Vec<(u32, PronominalLink)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx as u32 + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("@lang") {
            language = match rest.trim() {
                "en" => Language::English,
                "ur" => Language::Urdu,
                other => {
                    return Err(ParseError::Format {
                        line: line_no,
                        col: 1,
                        message: format!("unknown language {other:?}, expected en or ur"),
                    })
                }
            };
            continue;
        }
        if let Some(rest) = line.strip_prefix("@link") {
            links.push((line_no, parse_link(rest, line_no)?));
            continue;
        }
        if line.starts_with('@') {
            return Err(ParseError::Format {
                line: line_no,
                col: 1,
                message: format!("unknown directive {line:?}"),
            });
        }
        sentences.push(parse_tree_at(raw, line_no)?);
    }

    let mut text = HybridText::new(language, sentences);
    for (line_no, link) in links {
        text = add_link(&text, link).map_err(|err| ParseError::Format {
            line: line_no,
            col: 1,
            message: err.to_string(),
        })?;
    }
    Ok(text)
}

fn parse_link(rest: &str, line: u32) -> Result<PronominalLink, ParseError> {
    let mut referent = None;
    let mut anaphor = None;
    let mut surface = None;
    for field in rest.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| ParseError::Format {
            line,
            col: 1,
            message: format!("link field {field:?} is not key=value"),
        })?;
        match key {
            "referent" => referent = Some(parse_occurrence(value, line)?),
            "anaphor" => anaphor = Some(parse_occurrence(value, line)?),
            "surface" => {
                surface = Some(
                    LinkSurface::from_tag(value).ok_or_else(|| ParseError::Format {
                        line,
                        col: 1,
                        message: format!("unknown link surface {value:?}"),
                    })?,
                )
            }
            other => {
                return Err(ParseError::Format {
                    line,
                    col: 1,
                    message: format!("unknown link field {other:?}"),
                })
            }
        }
    }
    match (referent, anaphor, surface) {
        (Some(referent), Some(anaphor), Some(surface)) => Ok(PronominalLink {
            referent,
            anaphor,
            surface,
        }),
        _ => Err(ParseError::Format {
            line,
            col: 1,
            message: "link needs referent=, anaphor= and surface= fields".into(),
        }),
    }
}

fn parse_occurrence(value: &str, line: u32) -> Result<NpOccurrence, ParseError> {
    let bad = |message: String| ParseError::Format {
        line,
        col: 1,
        message,
    };
    let (sentence, path) = value
        .split_once(':')
        .ok_or_else(|| bad(format!("occurrence {value:?} is not <sentence>:<path>")))?;
    let sentence: usize = sentence
        .parse()
        .map_err(|_| bad(format!("bad sentence index {sentence:?}")))?;
    if path.is_empty() {
        return Err(bad("empty occurrence path".into()));
    }
    let path = path
        .split('.')
        .map(|part| {
            part.parse::<usize>()
                .map_err(|_| bad(format!("bad path component {part:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NpOccurrence::new(sentence, path))
}

/// Serialize a hybrid text; `parse_hybrid_text` inverts this exactly.
pub fn serialize_hybrid_text(text: &HybridText) -> String {
    let mut out = String::new();
    out.push_str("@lang ");
    out.push_str(&text.language.to_string());
    out.push('\n');
    for sentence in &text.sentences {
        out.push_str(&serialize_tree(sentence));
        out.push('\n');
    }
    for link in &text.links {
        out.push_str(&format!(
            "@link referent={} anaphor={} surface={}\n",
            link.referent,
            link.anaphor,
            link.surface.tag()
        ));
    }
    out
}
