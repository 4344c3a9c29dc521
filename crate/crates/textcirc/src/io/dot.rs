//! DOT rendering: wires as columns of chained edges, gates as nodes, boxes as
//! clusters. Output is a pure function of the canonical form.

use std::collections::BTreeMap;

use crate::circuit::{CircuitError, Element, TextCircuit};
use crate::grammar::EntityId;

pub fn render_dot(circuit: &TextCircuit) -> Result<String, CircuitError> {
    let order = circuit.canonical_order()?;
    let mut out = String::new();
    out.push_str("digraph circuit {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str("  node [shape=box fontname=\"monospace\"];\n");
    // One source node per wire; these are the column heads.
    let mut tips: BTreeMap<EntityId, String> = BTreeMap::new();
    for (i, wire) in circuit.wires.iter().enumerate() {
        out.push_str(&format!(
            "  w{i} [label=\"{}\" shape=plaintext];\n",
            escape(&wire.noun)
        ));
        tips.insert(wire.entity, format!("w{i}"));
    }
    let mut counter = 0usize;
    for element in order {
        emit_element(element, &mut out, &mut tips, &mut counter, 1);
    }
    out.push_str("}\n");
    Ok(out)
}

fn emit_element(
    element: &Element,
    out: &mut String,
    tips: &mut BTreeMap<EntityId, String>,
    counter: &mut usize,
    indent: usize,
) {
    let pad = "  ".repeat(indent);
    let id = format!("e{}", *counter);
    *counter += 1;
    match element {
        Element::Gate(g) => {
            out.push_str(&format!("{pad}{id} [label=\"{}\"];\n", escape(&g.label)));
            for w in &g.wires {
                connect(out, tips, &pad, *w, &id);
            }
        }
        Element::Modifier(m) => {
            out.push_str(&format!("{pad}subgraph cluster_{id} {{\n"));
            out.push_str(&format!("{pad}  label=\"{}\";\n", escape(&m.label)));
            out.push_str(&format!(
                "{pad}  {id} [label=\"{}\" style=bold];\n",
                escape(&m.label)
            ));
            for inner in &m.contents {
                emit_element(inner, out, tips, counter, indent + 1);
            }
            out.push_str(&format!("{pad}}}\n"));
            for w in &m.wires {
                connect(out, tips, &pad, *w, &id);
            }
        }
        Element::Conj(c) => {
            out.push_str(&format!("{pad}subgraph cluster_{id} {{\n"));
            out.push_str(&format!("{pad}  label=\"{}\";\n", escape(&c.label)));
            out.push_str(&format!(
                "{pad}  {id} [label=\"{}\" style=bold];\n",
                escape(&c.label)
            ));
            for inner in c.left.iter().chain(&c.right) {
                emit_element(inner, out, tips, counter, indent + 1);
            }
            out.push_str(&format!("{pad}}}\n"));
            for w in &c.wires {
                connect(out, tips, &pad, *w, &id);
            }
        }
    }
}

fn connect(
    out: &mut String,
    tips: &mut BTreeMap<EntityId, String>,
    pad: &str,
    wire: EntityId,
    node: &str,
) {
    if let Some(tip) = tips.get(&wire) {
        out.push_str(&format!("{pad}{tip} -> {node};\n"));
    }
    tips.insert(wire, node.to_string());
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}
