//! Circuit exchange format.
//!
//! ```text
//! wires: [1=student, 2=teacher]
//! elements: [
//!   adj(young; 1),
//!   scv(sees; 1,2){adv(passionately; 2){iv(teach; 2)}}
//! ]
//! ```
//!
//! The parser is whitespace-tolerant; [`TextCircuit::canonicalize`] emits the
//! same grammar with canonical element order and no whitespace at all.

use crate::circuit::{ConjBox, Element, Gate, GateKind, ModKind, ModifierBox, TextCircuit, Wire};
use crate::grammar::EntityId;
use crate::io::ParseError;

struct Scanner<'s> {
    src: &'s [u8],
    pos: usize,
    line: u32,
    col: u32,
}

impl<'s> Scanner<'s> {
    fn new(src: &'s str) -> Scanner<'s> {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Format {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.bump();
        }
    }

    fn expect_byte(&mut self, want: u8) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b) if b == want => {
                self.bump();
                Ok(())
            }
            Some(b) => Err(self.error(format!(
                "expected {:?}, found {:?}",
                want as char, b as char
            ))),
            None => Err(self.error(format!("expected {:?}, found end of input", want as char))),
        }
    }

    fn eat_byte(&mut self, want: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        self.skip_ws();
        for want in word.bytes() {
            match self.peek() {
                Some(b) if b == want => {
                    self.bump();
                }
                _ => return Err(self.error(format!("expected keyword {word:?}"))),
            }
        }
        Ok(())
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let mut digits = String::new();
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            digits.push(self.bump().unwrap() as char);
        }
        if digits.is_empty() {
            return Err(self.error("expected a wire id"));
        }
        digits
            .parse()
            .map_err(|_| self.error(format!("wire id {digits:?} out of range")))
    }

    /// Read a label up to (not including) any of `stops`; trims outer
    /// whitespace, keeps interior spaces.
    fn label(&mut self, stops: &[u8]) -> Result<String, ParseError> {
        self.skip_ws();
        let mut out = String::new();
        loop {
            match self.peek() {
                Some(b) if stops.contains(&b) => break,
                Some(b'\n') | None => break,
                Some(b) => {
                    out.push(b as char);
                    self.bump();
                }
            }
        }
        let trimmed = out.trim_end().to_string();
        if trimmed.is_empty() {
            return Err(self.error("expected a label"));
        }
        Ok(trimmed)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let mut out = String::new();
        while matches!(self.peek(), Some(b'a'..=b'z' | b'A'..=b'Z' | b'_')) {
            out.push(self.bump().unwrap() as char);
        }
        if out.is_empty() {
            return Err(self.error("expected an element kind"));
        }
        Ok(out)
    }
}

/// Parse the exchange format and validate the resulting circuit.
pub fn parse_circuit(input: &str) -> Result<TextCircuit, ParseError> {
    let mut s = Scanner::new(input);
    s.keyword("wires")?;
    s.expect_byte(b':')?;
    s.expect_byte(b'[')?;
    let mut wires = Vec::new();
    if !s.eat_byte(b']') {
        loop {
            let id = s.integer()?;
            if id == 0 {
                return Err(s.error("wire ids are positive"));
            }
            s.expect_byte(b'=')?;
            let noun = s.label(b",]")?;
            wires.push(Wire {
                entity: EntityId(id),
                noun,
            });
            if s.eat_byte(b']') {
                break;
            }
            s.expect_byte(b',')?;
        }
    }
    s.eat_byte(b';');
    s.keyword("elements")?;
    s.expect_byte(b':')?;
    s.expect_byte(b'[')?;
    let elements = parse_element_list(&mut s, b']')?;
    s.skip_ws();
    if s.peek().is_some() {
        return Err(s.error("unexpected trailing input"));
    }
    let circuit = TextCircuit::new(wires, elements);
    circuit.validate().map_err(|err| ParseError::Format {
        line: 1,
        col: 1,
        message: format!("circuit is not well formed: {err}"),
    })?;
    Ok(circuit)
}

fn parse_element_list(s: &mut Scanner<'_>, close: u8) -> Result<Vec<Element>, ParseError> {
    let mut elements = Vec::new();
    if s.eat_byte(close) {
        return Ok(elements);
    }
    loop {
        elements.push(parse_element(s)?);
        if s.eat_byte(close) {
            return Ok(elements);
        }
        s.expect_byte(b',')?;
    }
}

fn parse_element(s: &mut Scanner<'_>) -> Result<Element, ParseError> {
    let kind = s.ident()?;
    s.expect_byte(b'(')?;
    let label = s.label(b";")?;
    s.expect_byte(b';')?;
    let mut wires = Vec::new();
    loop {
        let id = s.integer()?;
        if id == 0 {
            return Err(s.error("wire ids are positive"));
        }
        wires.push(EntityId(id));
        if s.eat_byte(b')') {
            break;
        }
        s.expect_byte(b',')?;
    }
    match kind.as_str() {
        "adj" | "iv" | "tv" => {
            let gate_kind = match kind.as_str() {
                "adj" => GateKind::Adjective,
                "iv" => GateKind::Intransitive,
                _ => GateKind::Transitive,
            };
            Ok(Element::Gate(Gate {
                kind: gate_kind,
                label,
                wires,
            }))
        }
        "adv" | "adp" | "scv" => {
            let mod_kind = match kind.as_str() {
                "adv" => ModKind::Adverb,
                "adp" => ModKind::Adposition,
                _ => ModKind::SentComp,
            };
            s.expect_byte(b'{')?;
            let contents = parse_element_list(s, b'}')?;
            Ok(Element::Modifier(ModifierBox {
                kind: mod_kind,
                label,
                wires,
                contents,
            }))
        }
        "cnj" => {
            s.expect_byte(b'{')?;
            let left = parse_element_list(s, b'}')?;
            s.expect_byte(b'{')?;
            let right = parse_element_list(s, b'}')?;
            Ok(Element::Conj(ConjBox {
                label,
                wires,
                left,
                right,
            }))
        }
        other => Err(s.error(format!("unknown element kind {other:?}"))),
    }
}

/// Serialize a circuit in stored element order, one top-level element per
/// line. `parse_circuit` inverts this exactly.
pub fn serialize_circuit(circuit: &TextCircuit) -> String {
    let mut out = String::new();
    out.push_str("wires: [");
    for (i, wire) in circuit.wires.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&format!("{}={}", wire.entity, wire.noun));
    }
    out.push_str("]\nelements: [");
    for (i, element) in circuit.elements.iter().enumerate() {
        out.push_str(if i > 0 { ",\n  " } else { "\n  " });
        write_element(element, &mut out);
    }
    if circuit.elements.is_empty() {
        out.push(']');
    } else {
        out.push_str("\n]");
    }
    out.push('\n');
    out
}

fn write_element(element: &Element, out: &mut String) {
    let kind = match element {
        Element::Gate(g) => match g.kind {
            GateKind::Adjective => "adj",
            GateKind::Intransitive => "iv",
            GateKind::Transitive => "tv",
        },
        Element::Modifier(m) => match m.kind {
            ModKind::Adverb => "adv",
            ModKind::Adposition => "adp",
            ModKind::SentComp => "scv",
        },
        Element::Conj(_) => "cnj",
    };
    out.push_str(kind);
    out.push('(');
    out.push_str(element.label());
    out.push_str("; ");
    for (i, w) in element.wires().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&w.to_string());
    }
    out.push(')');
    match element {
        Element::Gate(_) => {}
        Element::Modifier(m) => {
            out.push('{');
            for (i, inner) in m.contents.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_element(inner, out);
            }
            out.push('}');
        }
        Element::Conj(c) => {
            out.push('{');
            for (i, inner) in c.left.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_element(inner, out);
            }
            out.push_str("}{");
            for (i, inner) in c.right.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_element(inner, out);
            }
            out.push('}');
        }
    }
}
