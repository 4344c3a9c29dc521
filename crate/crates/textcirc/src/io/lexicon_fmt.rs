//! Lexicon file format: one entry per line, `english <TAB> urdu <TAB> POS`,
//! with POS one of NP, PRON, IV, TV, ADJ, ADV, ADP, SCV, CNJ, COPULA.
//! PRON entries are noun-slot pronouns. `#` starts a comment line.

use std::collections::BTreeSet;

use crate::grammar::LexCat;
use crate::io::ParseError;
use crate::translate::{LexEntry, Lexicon};

pub fn parse_lexicon(input: &str) -> Result<Lexicon, ParseError> {
    let mut entries = Vec::new();
    let mut seen_en: BTreeSet<(LexCat, String)> = BTreeSet::new();
    let mut seen_ur: BTreeSet<(LexCat, String)> = BTreeSet::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx as u32 + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(ParseError::Format {
                line: line_no,
                col: 1,
                message: format!(
                    "expected english<TAB>urdu<TAB>POS, found {} fields",
                    fields.len()
                ),
            });
        }
        let (english, urdu, tag) = (fields[0], fields[1], fields[2]);
        if english.is_empty() || urdu.is_empty() {
            return Err(ParseError::Format {
                line: line_no,
                col: 1,
                message: "empty word field".into(),
            });
        }
        let (cat, pronoun) = if tag == "PRON" {
            (LexCat::Noun, true)
        } else {
            match LexCat::from_tag(tag) {
                Some(cat) => (cat, false),
                None => {
                    return Err(ParseError::Format {
                        line: line_no,
                        col: 1,
                        message: format!("unknown POS tag {tag:?}"),
                    })
                }
            }
        };
        if !seen_en.insert((cat, english.to_string())) {
            return Err(ParseError::Format {
                line: line_no,
                col: 1,
                message: format!("duplicate {} entry for english {english:?}", cat.tag()),
            });
        }
        if !seen_ur.insert((cat, urdu.to_string())) {
            return Err(ParseError::Format {
                line: line_no,
                col: 1,
                message: format!("duplicate {} entry for urdu {urdu:?}", cat.tag()),
            });
        }
        entries.push(LexEntry {
            english: english.to_string(),
            urdu: urdu.to_string(),
            cat,
            pronoun,
        });
    }
    Ok(Lexicon::from_entries(entries).expect("duplicates checked during parse"))
}

pub fn serialize_lexicon(lexicon: &Lexicon) -> String {
    let mut out = String::new();
    for entry in lexicon.entries() {
        let tag = if entry.pronoun {
            "PRON"
        } else {
            entry.cat.tag()
        };
        out.push_str(&format!("{}\t{}\t{}\n", entry.english, entry.urdu, tag));
    }
    out
}
