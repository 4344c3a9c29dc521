//! Text circuits: noun wires threaded through a partially ordered collection
//! of gates and boxes.
//!
//! The element list stores one linear extension of the partial order induced
//! by shared wires; [`TextCircuit::canonicalize`] emits the canonical
//! extension, so circuits related by interchanging elements on disjoint wires
//! serialize identically.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{BoxKind, DiagramBox, TextDiagram};
use crate::grammar::{EntityId, LexCat};
use crate::translate::{Direction, Lexicon};

/// 1-1 and 2-2 gates acting directly on noun wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GateKind {
    Adjective,
    Intransitive,
    Transitive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    pub label: String,
    pub wires: Vec<EntityId>,
}

/// Boxes that contain the verb element they modify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModKind {
    Adverb,
    Adposition,
    SentComp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifierBox {
    pub kind: ModKind,
    pub label: String,
    pub wires: Vec<EntityId>,
    pub contents: Vec<Element>,
}

/// A conjunction box containing the two sentence circuits it connects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjBox {
    pub label: String,
    pub wires: Vec<EntityId>,
    pub left: Vec<Element>,
    pub right: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Gate(Gate),
    Modifier(ModifierBox),
    Conj(ConjBox),
}

impl Element {
    pub fn wires(&self) -> &[EntityId] {
        match self {
            Element::Gate(g) => &g.wires,
            Element::Modifier(m) => &m.wires,
            Element::Conj(c) => &c.wires,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Element::Gate(g) => &g.label,
            Element::Modifier(m) => &m.label,
            Element::Conj(c) => &c.label,
        }
    }

    /// Fixed tie-breaking rank: adjective < intransitive < transitive <
    /// adverb < adposition < sentential complement < conjunction.
    pub fn kind_rank(&self) -> u8 {
        match self {
            Element::Gate(g) => match g.kind {
                GateKind::Adjective => 0,
                GateKind::Intransitive => 1,
                GateKind::Transitive => 2,
            },
            Element::Modifier(m) => match m.kind {
                ModKind::Adverb => 3,
                ModKind::Adposition => 4,
                ModKind::SentComp => 5,
            },
            Element::Conj(_) => 6,
        }
    }

    fn kind_tag(&self) -> &'static str {
        match self {
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
        }
    }
}

/// A noun wire: entity identity plus the introducing noun.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wire {
    pub entity: EntityId,
    pub noun: String,
}

/// The final intermediate representation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TextCircuit {
    pub wires: Vec<Wire>,
    pub elements: Vec<Element>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("diagram still contains a copula box ({0:?})")]
    UnreducedCopula(String),

    #[error("diagram still contains dashed pronominal wires")]
    DanglingLink,

    #[error("malformed element precedence: no ready element")]
    CycleDetected,

    #[error("arity violation: {0}")]
    ArityViolation(String),

    #[error("no dictionary entry for {cat:?} word {word:?}")]
    MissingDictionaryEntry { cat: LexCat, word: String },
}

impl TextCircuit {
    pub fn new(wires: Vec<Wire>, elements: Vec<Element>) -> TextCircuit {
        TextCircuit { wires, elements }
    }

    pub fn wire_position(&self, entity: EntityId) -> Option<usize> {
        self.wires.iter().position(|w| w.entity == entity)
    }

    /// Structural well-formedness: arity conservation and nesting soundness.
    pub fn validate(&self) -> Result<(), CircuitError> {
        let universe: Vec<EntityId> = self.wires.iter().map(|w| w.entity).collect();
        if !all_distinct(&universe) {
            return Err(CircuitError::ArityViolation(
                "duplicate circuit wires".into(),
            ));
        }
        for element in &self.elements {
            validate_element(element, &universe)?;
        }
        Ok(())
    }

    /// Elements in canonical order (a deterministic linear extension of the
    /// shared-wire partial order).
    pub fn canonical_order(&self) -> Result<Vec<&Element>, CircuitError> {
        let positions: BTreeMap<EntityId, usize> = self
            .wires
            .iter()
            .enumerate()
            .map(|(i, w)| (w.entity, i))
            .collect();
        canonical_order(&self.elements, &positions)
    }

    /// Canonical serialized form: deterministic bytes, equal for circuits
    /// related by topological deformation.
    pub fn canonicalize(&self) -> Result<String, CircuitError> {
        let mut out = String::new();
        out.push_str("wires:[");
        for (i, wire) in self.wires.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}={}", wire.entity, wire.noun));
        }
        out.push_str("];elements:[");
        let positions: BTreeMap<EntityId, usize> = self
            .wires
            .iter()
            .enumerate()
            .map(|(i, w)| (w.entity, i))
            .collect();
        write_elements(&mut out, &self.elements, &positions)?;
        out.push(']');
        Ok(out)
    }

    /// Relabel every gate, box and wire noun through the dictionary.
    pub fn map_labels(
        &self,
        lexicon: &Lexicon,
        direction: Direction,
    ) -> Result<TextCircuit, CircuitError> {
        let wires = self
            .wires
            .iter()
            .map(|w| {
                Ok(Wire {
                    entity: w.entity,
                    noun: lookup(lexicon, direction, LexCat::Noun, &w.noun)?,
                })
            })
            .collect::<Result<Vec<_>, CircuitError>>()?;
        let elements = self
            .elements
            .iter()
            .map(|e| map_element(e, lexicon, direction))
            .collect::<Result<Vec<_>, CircuitError>>()?;
        Ok(TextCircuit { wires, elements })
    }
}

fn all_distinct(wires: &[EntityId]) -> bool {
    let mut seen = wires.to_vec();
    seen.sort();
    seen.dedup();
    seen.len() == wires.len()
}

fn validate_element(element: &Element, universe: &[EntityId]) -> Result<(), CircuitError> {
    let wires = element.wires();
    if !all_distinct(wires) {
        return Err(CircuitError::ArityViolation(format!(
            "element {:?} repeats a wire",
            element.label()
        )));
    }
    for w in wires {
        if !universe.contains(w) {
            return Err(CircuitError::ArityViolation(format!(
                "element {:?} touches wire {w} outside its scope",
                element.label()
            )));
        }
    }
    match element {
        Element::Gate(g) => {
            let expected = match g.kind {
                GateKind::Adjective | GateKind::Intransitive => 1,
                GateKind::Transitive => 2,
            };
            if g.wires.len() != expected {
                return Err(CircuitError::ArityViolation(format!(
                    "gate {:?} has arity {}, expected {expected}",
                    g.label,
                    g.wires.len()
                )));
            }
        }
        Element::Modifier(m) => {
            if m.contents.is_empty() {
                return Err(CircuitError::ArityViolation(format!(
                    "box {:?} is empty",
                    m.label
                )));
            }
            match m.kind {
                ModKind::Adverb | ModKind::Adposition => {
                    if m.contents.len() != 1 {
                        return Err(CircuitError::ArityViolation(format!(
                            "box {:?} must contain exactly one element",
                            m.label
                        )));
                    }
                }
                ModKind::SentComp => {}
            }
            let inner_universe: Vec<EntityId> = match m.kind {
                // The modified verb element spans exactly the box wires.
                ModKind::Adverb => m.wires.clone(),
                // Last wire is the adposition object, untouched inside.
                ModKind::Adposition => m.wires[..m.wires.len() - 1].to_vec(),
                // First wire is the perceiving subject, untouched inside.
                ModKind::SentComp => m.wires[1..].to_vec(),
            };
            if matches!(m.kind, ModKind::Adposition | ModKind::SentComp) && m.wires.len() < 2 {
                return Err(CircuitError::ArityViolation(format!(
                    "box {:?} needs at least two wires",
                    m.label
                )));
            }
            let mut touched: Vec<EntityId> = Vec::new();
            for inner in &m.contents {
                validate_element(inner, &inner_universe)?;
                for w in inner.wires() {
                    if !touched.contains(w) {
                        touched.push(*w);
                    }
                }
            }
            if m.kind == ModKind::Adverb && touched.len() != m.wires.len() {
                return Err(CircuitError::ArityViolation(format!(
                    "adverb box {:?} wires differ from its contents'",
                    m.label
                )));
            }
        }
        Element::Conj(c) => {
            if c.left.is_empty() || c.right.is_empty() {
                return Err(CircuitError::ArityViolation(format!(
                    "conjunction {:?} with an empty operand",
                    c.label
                )));
            }
            for inner in c.left.iter().chain(&c.right) {
                validate_element(inner, &c.wires)?;
            }
        }
    }
    Ok(())
}

fn canonical_order<'e>(
    elements: &'e [Element],
    positions: &BTreeMap<EntityId, usize>,
) -> Result<Vec<&'e Element>, CircuitError> {
    // Per-wire queues derived from list order; the list itself is one valid
    // linear extension, so these queues are the whole partial order.
    let mut queues: BTreeMap<EntityId, Vec<usize>> = BTreeMap::new();
    for (idx, element) in elements.iter().enumerate() {
        for &w in element.wires() {
            queues.entry(w).or_default().push(idx);
        }
    }
    let mut heads: BTreeMap<EntityId, usize> = queues.keys().map(|&w| (w, 0usize)).collect();
    let mut emitted = vec![false; elements.len()];
    let mut order = Vec::with_capacity(elements.len());
    for _ in 0..elements.len() {
        let mut best: Option<(usize, u8, &str, usize)> = None;
        for (idx, element) in elements.iter().enumerate() {
            if emitted[idx] {
                continue;
            }
            let ready = element.wires().iter().all(|w| queues[w][heads[w]] == idx);
            if !ready {
                continue;
            }
            let min_pos = element
                .wires()
                .iter()
                .map(|w| positions.get(w).copied().unwrap_or(usize::MAX))
                .min()
                .unwrap_or(usize::MAX);
            let key = (min_pos, element.kind_rank(), element.label(), idx);
            if best.map(|b| key < (b.0, b.1, b.2, b.3)).unwrap_or(true) {
                best = Some(key);
            }
        }
        let Some((_, _, _, idx)) = best else {
            return Err(CircuitError::CycleDetected);
        };
        emitted[idx] = true;
        for &w in elements[idx].wires() {
            *heads.get_mut(&w).expect("wire has a queue") += 1;
        }
        order.push(&elements[idx]);
    }
    Ok(order)
}

fn write_elements(
    out: &mut String,
    elements: &[Element],
    positions: &BTreeMap<EntityId, usize>,
) -> Result<(), CircuitError> {
    let order = canonical_order(elements, positions)?;
    for (i, element) in order.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_element(out, element)?;
    }
    Ok(())
}

fn write_element(out: &mut String, element: &Element) -> Result<(), CircuitError> {
    out.push_str(element.kind_tag());
    out.push('(');
    out.push_str(element.label());
    out.push(';');
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
            let inner_positions = box_positions(&m.wires);
            out.push('{');
            write_elements(out, &m.contents, &inner_positions)?;
            out.push('}');
        }
        Element::Conj(c) => {
            let inner_positions = box_positions(&c.wires);
            out.push('{');
            write_elements(out, &c.left, &inner_positions)?;
            out.push_str("}{");
            write_elements(out, &c.right, &inner_positions)?;
            out.push('}');
        }
    }
    Ok(())
}

fn box_positions(wires: &[EntityId]) -> BTreeMap<EntityId, usize> {
    wires.iter().enumerate().map(|(i, &w)| (w, i)).collect()
}

fn lookup(
    lexicon: &Lexicon,
    direction: Direction,
    cat: LexCat,
    word: &str,
) -> Result<String, CircuitError> {
    lexicon
        .translate_word(cat, word, direction)
        .map(str::to_string)
        .ok_or_else(|| CircuitError::MissingDictionaryEntry {
            cat,
            word: word.to_string(),
        })
}

fn map_element(
    element: &Element,
    lexicon: &Lexicon,
    direction: Direction,
) -> Result<Element, CircuitError> {
    Ok(match element {
        Element::Gate(g) => {
            let cat = match g.kind {
                GateKind::Adjective => LexCat::Adjective,
                GateKind::Intransitive => LexCat::IntransVerb,
                GateKind::Transitive => LexCat::TransVerb,
            };
            Element::Gate(Gate {
                kind: g.kind,
                label: lookup(lexicon, direction, cat, &g.label)?,
                wires: g.wires.clone(),
            })
        }
        Element::Modifier(m) => {
            let cat = match m.kind {
                ModKind::Adverb => LexCat::Adverb,
                ModKind::Adposition => LexCat::Adposition,
                ModKind::SentComp => LexCat::ScompVerb,
            };
            Element::Modifier(ModifierBox {
                kind: m.kind,
                label: lookup(lexicon, direction, cat, &m.label)?,
                wires: m.wires.clone(),
                contents: m
                    .contents
                    .iter()
                    .map(|e| map_element(e, lexicon, direction))
                    .collect::<Result<Vec<_>, _>>()?,
            })
        }
        Element::Conj(c) => Element::Conj(ConjBox {
            label: lookup(lexicon, direction, LexCat::Conjunction, &c.label)?,
            wires: c.wires.clone(),
            left: c
                .left
                .iter()
                .map(|e| map_element(e, lexicon, direction))
                .collect::<Result<Vec<_>, _>>()?,
            right: c
                .right
                .iter()
                .map(|e| map_element(e, lexicon, direction))
                .collect::<Result<Vec<_>, _>>()?,
        }),
    })
}

/// Convert a composed, copula-free diagram into a circuit.
pub fn diagram_to_circuit(diagram: &TextDiagram) -> Result<TextCircuit, CircuitError> {
    if !diagram.dangling.is_empty() {
        return Err(CircuitError::DanglingLink);
    }
    let wires = diagram
        .wires
        .iter()
        .map(|w| Wire {
            entity: w.entity,
            noun: w.noun.clone(),
        })
        .collect();
    let elements = diagram
        .boxes
        .iter()
        .map(box_to_element)
        .collect::<Result<Vec<_>, CircuitError>>()?;
    let circuit = TextCircuit { wires, elements };
    circuit.validate()?;
    Ok(circuit)
}

fn box_to_element(b: &DiagramBox) -> Result<Element, CircuitError> {
    let inner_elements = |d: &TextDiagram| -> Result<Vec<Element>, CircuitError> {
        d.boxes.iter().map(box_to_element).collect()
    };
    Ok(match b.kind {
        BoxKind::Copula => return Err(CircuitError::UnreducedCopula(b.label.clone())),
        BoxKind::Adjective => Element::Gate(Gate {
            kind: GateKind::Adjective,
            label: b.label.clone(),
            wires: b.wires.clone(),
        }),
        BoxKind::IvGate => Element::Gate(Gate {
            kind: GateKind::Intransitive,
            label: b.label.clone(),
            wires: b.wires.clone(),
        }),
        BoxKind::TvGate => Element::Gate(Gate {
            kind: GateKind::Transitive,
            label: b.label.clone(),
            wires: b.wires.clone(),
        }),
        BoxKind::AdverbBox => Element::Modifier(ModifierBox {
            kind: ModKind::Adverb,
            label: b.label.clone(),
            wires: b.wires.clone(),
            contents: inner_elements(&b.inner[0])?,
        }),
        BoxKind::AdpositionBox => Element::Modifier(ModifierBox {
            kind: ModKind::Adposition,
            label: b.label.clone(),
            wires: b.wires.clone(),
            contents: inner_elements(&b.inner[0])?,
        }),
        BoxKind::ScopeBox => Element::Modifier(ModifierBox {
            kind: ModKind::SentComp,
            label: b.label.clone(),
            wires: b.wires.clone(),
            contents: inner_elements(&b.inner[0])?,
        }),
        BoxKind::ConjBox => Element::Conj(ConjBox {
            label: b.label.clone(),
            wires: b.wires.clone(),
            left: inner_elements(&b.inner[0])?,
            right: inner_elements(&b.inner[1])?,
        }),
    })
}

/// True iff the two circuits are equal once `a`'s labels are mapped through
/// the dictionary and both are brought to canonical form.
pub fn equal_up_to_dictionary(
    a: &TextCircuit,
    b: &TextCircuit,
    lexicon: &Lexicon,
    direction: Direction,
) -> Result<bool, CircuitError> {
    let mapped = a.map_labels(lexicon, direction)?;
    Ok(mapped.canonicalize()? == b.canonicalize()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn wire(id: u32, noun: &str) -> Wire {
        Wire {
            entity: EntityId(id),
            noun: noun.into(),
        }
    }

    pub(crate) fn adj(label: &str, w: u32) -> Element {
        Element::Gate(Gate {
            kind: GateKind::Adjective,
            label: label.into(),
            wires: vec![EntityId(w)],
        })
    }

    pub(crate) fn iv(label: &str, w: u32) -> Element {
        Element::Gate(Gate {
            kind: GateKind::Intransitive,
            label: label.into(),
            wires: vec![EntityId(w)],
        })
    }

    pub(crate) fn tv(label: &str, a: u32, b: u32) -> Element {
        Element::Gate(Gate {
            kind: GateKind::Transitive,
            label: label.into(),
            wires: vec![EntityId(a), EntityId(b)],
        })
    }

    #[test]
    fn john_reads_books_canonical_form() {
        let circuit = TextCircuit::new(
            vec![wire(1, "John"), wire(2, "books")],
            vec![tv("reads", 1, 2)],
        );
        assert_eq!(
            circuit.canonicalize().unwrap(),
            "wires:[1=John,2=books];elements:[tv(reads;1,2)]"
        );
    }

    #[test]
    fn empty_circuit_canonical_form() {
        let circuit = TextCircuit::default();
        assert_eq!(circuit.canonicalize().unwrap(), "wires:[];elements:[]");
    }

    #[test]
    fn disjoint_interchange_is_quotiented() {
        let a = TextCircuit::new(
            vec![wire(1, "student"), wire(2, "teacher")],
            vec![adj("young", 1), adj("honest", 2)],
        );
        let b = TextCircuit::new(
            vec![wire(1, "student"), wire(2, "teacher")],
            vec![adj("honest", 2), adj("young", 1)],
        );
        assert_eq!(a.canonicalize().unwrap(), b.canonicalize().unwrap());
    }

    #[test]
    fn shared_wire_order_is_meaning() {
        let a = TextCircuit::new(
            vec![wire(1, "student")],
            vec![iv("smiles", 1), iv("frowns", 1)],
        );
        let b = TextCircuit::new(
            vec![wire(1, "student")],
            vec![iv("frowns", 1), iv("smiles", 1)],
        );
        assert_ne!(a.canonicalize().unwrap(), b.canonicalize().unwrap());
    }

    #[test]
    fn transitive_gate_needs_distinct_wires() {
        let bad = TextCircuit::new(vec![wire(1, "John")], vec![tv("reads", 1, 1)]);
        assert!(matches!(
            bad.validate(),
            Err(CircuitError::ArityViolation(_))
        ));
    }

    #[test]
    fn nesting_cannot_escape_box_wires() {
        let bad = TextCircuit::new(
            vec![wire(1, "student"), wire(2, "teacher")],
            vec![Element::Modifier(ModifierBox {
                kind: ModKind::Adverb,
                label: "passionately".into(),
                wires: vec![EntityId(1)],
                contents: vec![iv("teach", 2)],
            })],
        );
        assert!(matches!(
            bad.validate(),
            Err(CircuitError::ArityViolation(_))
        ));
    }
}
