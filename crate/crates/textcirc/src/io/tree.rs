//! Bracketed tree format: `(LABEL child child ...)`, terminals as bare
//! tokens, NP entity index as a `#k` label suffix, multiword terminals in
//! double quotes.
//!
//! ```text
//! (S (NP#1 John) (TVP reads) (NP#2 books))
//! (S (NP#1 John) (NP#2 kitabein) (TVP "parhta hai"))
//! ```

use crate::grammar::{EntityId, NodeLabel, SyntaxTree};
use crate::io::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokKind {
    LParen,
    RParen,
    Atom { quoted: bool },
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokKind,
    text: String,
    line: u32,
    col: u32,
}

fn lex(input: &str, base_line: u32) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = base_line;
    let mut col = 1u32;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '(' => {
                tokens.push(Token {
                    kind: TokKind::LParen,
                    text: "(".into(),
                    line,
                    col,
                });
                chars.next();
                col += 1;
            }
            ')' => {
                tokens.push(Token {
                    kind: TokKind::RParen,
                    text: ")".into(),
                    line,
                    col,
                });
                chars.next();
                col += 1;
            }
            '"' => {
                let (start_line, start_col) = (line, col);
                chars.next();
                col += 1;
                let mut text = String::new();
                let mut closed = false;
                for c in chars.by_ref() {
                    col += 1;
                    if c == '"' {
                        closed = true;
                        break;
                    }
                    if c == '\n' {
                        break;
                    }
                    text.push(c);
                }
                if !closed {
                    return Err(ParseError::Lex {
                        line: start_line,
                        col: start_col,
                        message: "unterminated quoted terminal".into(),
                    });
                }
                tokens.push(Token {
                    kind: TokKind::Atom { quoted: true },
                    text,
                    line: start_line,
                    col: start_col,
                });
            }
            _ => {
                let (start_line, start_col) = (line, col);
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' {
                        break;
                    }
                    text.push(c);
                    chars.next();
                    col += 1;
                }
                tokens.push(Token {
                    kind: TokKind::Atom { quoted: false },
                    text,
                    line: start_line,
                    col: start_col,
                });
            }
        }
    }
    Ok(tokens)
}

/// Parse a single bracketed tree.
pub fn parse_tree(input: &str) -> Result<SyntaxTree, ParseError> {
    parse_tree_at(input, 1)
}

/// Parse a tree with line numbers offset for embedding in a larger file.
pub(crate) fn parse_tree_at(input: &str, base_line: u32) -> Result<SyntaxTree, ParseError> {
    let tokens = lex(input, base_line)?;
    if tokens.is_empty() {
        return Err(ParseError::Format {
            line: base_line,
            col: 1,
            message: "empty input, expected a bracketed tree".into(),
        });
    }
    let mut pos = 0usize;
    let tree = parse_node(&tokens, &mut pos)?;
    if pos != tokens.len() {
        let t = &tokens[pos];
        return Err(ParseError::Format {
            line: t.line,
            col: t.col,
            message: format!("unexpected trailing {:?}", t.text),
        });
    }
    Ok(tree)
}

fn parse_node(tokens: &[Token], pos: &mut usize) -> Result<SyntaxTree, ParseError> {
    let open = expect(tokens, pos)?;
    if open.kind != TokKind::LParen {
        return Err(ParseError::Format {
            line: open.line,
            col: open.col,
            message: format!("expected '(', found {:?}", open.text),
        });
    }
    let open_pos = (open.line, open.col);
    let head = expect(tokens, pos)?;
    let (label, entity) = match head.kind {
        TokKind::Atom { quoted: false } => parse_label(head)?,
        _ => {
            return Err(ParseError::Format {
                line: head.line,
                col: head.col,
                message: "expected a node label after '('".into(),
            })
        }
    };

    let mut children = Vec::new();
    let mut word: Option<String> = None;
    loop {
        let Some(next) = tokens.get(*pos) else {
            return Err(ParseError::UnbalancedParens {
                line: open_pos.0,
                col: open_pos.1,
            });
        };
        match next.kind {
            TokKind::RParen => {
                *pos += 1;
                break;
            }
            TokKind::LParen => {
                if word.is_some() {
                    return Err(ParseError::Format {
                        line: next.line,
                        col: next.col,
                        message: "leaf node cannot also have children".into(),
                    });
                }
                children.push(parse_node(tokens, pos)?);
            }
            TokKind::Atom { .. } => {
                if !children.is_empty() {
                    return Err(ParseError::Format {
                        line: next.line,
                        col: next.col,
                        message: "internal node cannot carry a terminal word".into(),
                    });
                }
                if word.is_some() {
                    return Err(ParseError::Format {
                        line: next.line,
                        col: next.col,
                        message: "leaf takes a single terminal; quote multiword terminals".into(),
                    });
                }
                word = Some(next.text.clone());
                *pos += 1;
            }
        }
    }

    if word.is_none() && children.is_empty() {
        return Err(ParseError::Format {
            line: open_pos.0,
            col: open_pos.1,
            message: format!("empty {} node", label.name()),
        });
    }
    Ok(SyntaxTree {
        label,
        entity_index: entity,
        word,
        children,
    })
}

fn parse_label(token: &Token) -> Result<(NodeLabel, Option<EntityId>), ParseError> {
    let (name, index) = match token.text.split_once('#') {
        Some((name, index)) => (name, Some(index)),
        None => (token.text.as_str(), None),
    };
    let label = NodeLabel::from_name(name).ok_or_else(|| ParseError::Format {
        line: token.line,
        col: token.col,
        message: format!("unknown node label {name:?}"),
    })?;
    let entity = match index {
        None => None,
        Some(raw) => match raw.parse::<u32>() {
            Ok(n) if n > 0 => Some(EntityId(n)),
            _ => {
                return Err(ParseError::BadEntityIndex {
                    line: token.line,
                    col: token.col,
                    token: token.text.clone(),
                })
            }
        },
    };
    Ok((label, entity))
}

fn expect<'t>(tokens: &'t [Token], pos: &mut usize) -> Result<&'t Token, ParseError> {
    let token = tokens.get(*pos).ok_or(ParseError::UnbalancedParens {
        line: tokens.last().map(|t| t.line).unwrap_or(1),
        col: tokens.last().map(|t| t.col).unwrap_or(1),
    })?;
    *pos += 1;
    Ok(token)
}

/// Serialize a tree back to the bracketed format. Words are quoted exactly
/// when they contain whitespace, so `parse_tree` inverts this byte for byte.
pub fn serialize_tree(tree: &SyntaxTree) -> String {
    let mut out = String::new();
    write_node(tree, &mut out);
    out
}

fn write_node(node: &SyntaxTree, out: &mut String) {
    out.push('(');
    out.push_str(node.label.name());
    if let Some(entity) = node.entity_index {
        out.push('#');
        out.push_str(&entity.to_string());
    }
    if let Some(word) = &node.word {
        out.push(' ');
        let needs_quotes = word.is_empty()
            || word
                .chars()
                .any(|c| c.is_whitespace() || c == '(' || c == ')');
        if needs_quotes {
            out.push('"');
            out.push_str(word);
            out.push('"');
        } else {
            out.push_str(word);
        }
    }
    for child in &node.children {
        out.push(' ');
        write_node(child, out);
    }
    out.push(')');
}
