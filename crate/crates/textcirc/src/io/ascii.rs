//! ASCII rendering: a grid with one column per wire and one row per element
//! (box contents indented below their box). `#` marks the wires an element
//! touches.
//!
//! ```text
//! student   teacher
//! #         .         young
//! .         #         honest
//! #         #         sees
//! .         #           passionately
//! .         #             teach
//! ```

use std::collections::BTreeMap;

use crate::circuit::{CircuitError, Element, TextCircuit};
use crate::grammar::EntityId;

/// Rendering options; colored output wraps wire marks in ANSI escapes.
#[derive(Debug, Clone, Copy, Default)]
pub struct AsciiStyle {
    pub color: bool,
}

/// Plain deterministic rendering.
pub fn render_ascii(circuit: &TextCircuit) -> Result<String, CircuitError> {
    render_ascii_with(circuit, AsciiStyle::default())
}

pub fn render_ascii_with(circuit: &TextCircuit, style: AsciiStyle) -> Result<String, CircuitError> {
    if circuit.wires.is_empty() && circuit.elements.is_empty() {
        return Ok(String::new());
    }
    let order = circuit.canonical_order()?;
    let columns: Vec<EntityId> = circuit.wires.iter().map(|w| w.entity).collect();
    let widths: Vec<usize> = circuit
        .wires
        .iter()
        .map(|w| w.noun.len().max(1) + 2)
        .collect();
    let index: BTreeMap<EntityId, usize> =
        columns.iter().enumerate().map(|(i, &w)| (w, i)).collect();

    let mut out = String::new();
    for (i, wire) in circuit.wires.iter().enumerate() {
        out.push_str(&pad(&wire.noun, widths[i]));
    }
    out.push('\n');
    for element in order {
        emit_rows(element, &mut out, &columns, &widths, &index, 0, style);
    }
    Ok(out)
}

fn emit_rows(
    element: &Element,
    out: &mut String,
    columns: &[EntityId],
    widths: &[usize],
    index: &BTreeMap<EntityId, usize>,
    depth: usize,
    style: AsciiStyle,
) {
    let mut marks = vec![false; columns.len()];
    for w in element.wires() {
        if let Some(&i) = index.get(w) {
            marks[i] = true;
        }
    }
    for (i, &touched) in marks.iter().enumerate() {
        let mark = if touched { "#" } else { "." };
        let cell = if touched && style.color {
            format!("\u{1b}[36m{mark}\u{1b}[0m{}", " ".repeat(widths[i] - 1))
        } else {
            pad(mark, widths[i])
        };
        out.push_str(&cell);
    }
    out.push_str(&"  ".repeat(depth));
    out.push_str(element.label());
    out.push('\n');
    match element {
        Element::Gate(_) => {}
        Element::Modifier(m) => {
            for inner in &m.contents {
                emit_rows(inner, out, columns, widths, index, depth + 1, style);
            }
        }
        Element::Conj(c) => {
            for inner in &c.left {
                emit_rows(inner, out, columns, widths, index, depth + 1, style);
            }
            for inner in &c.right {
                emit_rows(inner, out, columns, widths, index, depth + 1, style);
            }
        }
    }
}

fn pad(s: &str, width: usize) -> String {
    let mut out = s.to_string();
    while out.len() < width {
        out.push(' ');
    }
    out
}
