//! Text diagrams: the intermediate form between hybrid grammar and circuits.
//!
//! Sentence types are eliminated in favor of noun wires, every generator
//! contributes its diagram piece, phrase scope becomes a nested box, and
//! pronominal links become dashed wires that composition resolves into shared
//! entity wires. Wire order is the role-canonical first-mention order of
//! entities, which is identical for a tree and its translation.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::grammar::{
    validate, EntityId, GeneratorTable, Language, RuleId, SyntaxTree, ValidationReport,
};

/// Kinds of boxes appearing in a text diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxKind {
    Adjective,
    IvGate,
    TvGate,
    AdverbBox,
    AdpositionBox,
    ScopeBox,
    ConjBox,
    Copula,
}

/// A box on noun wires; the same wires enter and leave.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramBox {
    pub kind: BoxKind,
    pub label: String,
    pub wires: Vec<EntityId>,
    /// Nested diagrams: one for adverb/adposition/scope boxes, two for
    /// conjunction boxes, none for gates and copulas.
    pub inner: Vec<TextDiagram>,
}

/// A noun wire with its display label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramWire {
    pub entity: EntityId,
    pub noun: String,
}

/// Direction of a dashed pronominal wire stub on a fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DashedDirection {
    /// The entity continues into a later fragment.
    Outgoing,
    /// The entity is expected from an earlier fragment.
    Incoming,
}

/// A dashed-wire stub left by a pronominal link before composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DashedLink {
    pub entity: EntityId,
    pub direction: DashedDirection,
}

/// A string diagram of boxes over entity wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextDiagram {
    pub wires: Vec<DiagramWire>,
    pub boxes: Vec<DiagramBox>,
    /// Present on per-sentence fragments only; empty after composition.
    pub dangling: Vec<DashedLink>,
}

impl TextDiagram {
    pub fn new(wires: Vec<DiagramWire>, boxes: Vec<DiagramBox>) -> TextDiagram {
        TextDiagram {
            wires,
            boxes,
            dangling: Vec::new(),
        }
    }

    pub fn wire_entities(&self) -> Vec<EntityId> {
        self.wires.iter().map(|w| w.entity).collect()
    }

    pub fn has_wire(&self, entity: EntityId) -> bool {
        self.wires.iter().any(|w| w.entity == entity)
    }

    fn contains_copula(&self) -> bool {
        self.boxes
            .iter()
            .any(|b| b.kind == BoxKind::Copula || b.inner.iter().any(TextDiagram::contains_copula))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("tree does not validate: {0}")]
    ValidationFailure(ValidationReport),

    #[error("dashed wire for entity {entity} is not on the fragment's wires")]
    EntityMismatch { entity: EntityId },

    #[error("dashed wire for entity {entity} has no partner fragment")]
    DanglingLink { entity: EntityId },

    #[error("wire conflict: {0}")]
    WireConflict(String),
}

/// Convert one validated sentence tree into a diagram fragment.
///
/// The fragment's wires are the sentence's entities in role-canonical
/// first-mention order. Noun-phrase content (adjectives, relative clauses)
/// is emitted onto the wires ahead of the clause's single predicate element;
/// phrase-scope content nests inside its box.
pub fn tree_to_fragment(
    tree: &SyntaxTree,
    table: &GeneratorTable,
) -> Result<TextDiagram, DiagramError> {
    let report = validate(tree, table);
    if !report.is_ok() {
        return Err(DiagramError::ValidationFailure(report));
    }
    let language = table.language;
    let wires = sentence_wires(tree, language);
    let labels: BTreeMap<EntityId, String> =
        wires.iter().map(|w| (w.entity, w.noun.clone())).collect();
    let emitter = Emitter { language, labels };
    let mut boxes = Vec::new();
    emitter.emit_preps(tree, &mut boxes)?;
    boxes.extend(emitter.predicate(tree)?);
    Ok(TextDiagram::new(wires, boxes))
}

/// Entities of a sentence in role-canonical first-mention order.
fn sentence_wires(tree: &SyntaxTree, language: Language) -> Vec<DiagramWire> {
    let mut wires: Vec<DiagramWire> = Vec::new();
    for (_, leaf) in crate::grammar::role_order_leaves(tree, language) {
        let Some(entity) = leaf.entity_index else {
            continue;
        };
        if wires.iter().any(|w| w.entity == entity) {
            continue;
        }
        wires.push(DiagramWire {
            entity,
            noun: leaf.word.clone().unwrap_or_default(),
        });
    }
    wires
}

struct Emitter {
    language: Language,
    labels: BTreeMap<EntityId, String>,
}

impl Emitter {
    fn rule_of(&self, node: &SyntaxTree) -> RuleId {
        node.rule(self.language)
            .expect("tree validated before emission")
    }

    fn core_entity(&self, np: &SyntaxTree) -> Result<EntityId, DiagramError> {
        np.core_entity(self.language)
            .ok_or_else(|| DiagramError::WireConflict("noun phrase without an entity index".into()))
    }

    /// Emit noun-phrase preparation boxes for the whole subtree, in
    /// role-canonical order. Relative clauses contribute their own preps and
    /// their predicate at the position of the host noun phrase.
    fn emit_preps(&self, node: &SyntaxTree, out: &mut Vec<DiagramBox>) -> Result<(), DiagramError> {
        if node.is_leaf() {
            return Ok(());
        }
        let rule = self.rule_of(node);
        match rule {
            RuleId::AdjectivePre => {
                let adj_idx = rule.child_index(self.language, 0);
                let np_idx = rule.child_index(self.language, 1);
                self.emit_preps(&node.children[np_idx], out)?;
                let entity = self.core_entity(node)?;
                out.push(DiagramBox {
                    kind: BoxKind::Adjective,
                    label: leaf_word(&node.children[adj_idx]),
                    wires: vec![entity],
                    inner: Vec::new(),
                });
            }
            RuleId::RelativeClause => {
                self.emit_preps(&node.children[0], out)?;
                self.emit_preps(&node.children[1], out)?;
                out.extend(self.predicate(&node.children[1])?);
            }
            _ => {
                for pos in 0..rule.arity() {
                    let idx = rule.child_index(self.language, pos);
                    self.emit_preps(&node.children[idx], out)?;
                }
            }
        }
        Ok(())
    }

    /// The clause's predicate contribution: one element box, or the
    /// adjective-plus-copula pair for copular clauses.
    fn predicate(&self, clause: &SyntaxTree) -> Result<Vec<DiagramBox>, DiagramError> {
        let rule = self.rule_of(clause);
        let boxes = match rule {
            RuleId::IntransVerb => {
                let subj = self.core_entity(clause.role_child(rule, self.language, 0))?;
                vec![self.predicate_ivp(clause.role_child(rule, self.language, 1), subj)?]
            }
            RuleId::TransVerb => {
                let subj = self.core_entity(clause.role_child(rule, self.language, 0))?;
                let obj = self.core_entity(clause.role_child(rule, self.language, 2))?;
                vec![self.predicate_tvp(clause.role_child(rule, self.language, 1), subj, obj)?]
            }
            RuleId::AdjectivePost => {
                let subj = self.core_entity(clause.role_child(rule, self.language, 0))?;
                let copula = clause.role_child(rule, self.language, 1);
                let adjective = clause.role_child(rule, self.language, 2);
                vec![
                    DiagramBox {
                        kind: BoxKind::Adjective,
                        label: leaf_word(adjective),
                        wires: vec![subj],
                        inner: Vec::new(),
                    },
                    DiagramBox {
                        kind: BoxKind::Copula,
                        label: leaf_word(copula),
                        wires: vec![subj],
                        inner: Vec::new(),
                    },
                ]
            }
            RuleId::Conjunction => {
                let left = clause.role_child(rule, self.language, 0);
                let right = clause.role_child(rule, self.language, 2);
                let cnj = clause.role_child(rule, self.language, 1);
                let left_diagram = self.clause_diagram(left)?;
                let right_diagram = self.clause_diagram(right)?;
                let mut wires: Vec<EntityId> = Vec::new();
                for w in left_diagram
                    .wire_entities()
                    .into_iter()
                    .chain(right_diagram.wire_entities())
                {
                    if !wires.contains(&w) {
                        wires.push(w);
                    }
                }
                vec![DiagramBox {
                    kind: BoxKind::ConjBox,
                    label: leaf_word(cnj),
                    wires,
                    inner: vec![left_diagram, right_diagram],
                }]
            }
            other => {
                return Err(DiagramError::WireConflict(format!(
                    "rule {} cannot head a clause",
                    other.name()
                )))
            }
        };
        Ok(boxes)
    }

    /// Predicate boxes of a scoped clause, wrapped as a nested diagram over
    /// the clause's own wires.
    fn clause_diagram(&self, clause: &SyntaxTree) -> Result<TextDiagram, DiagramError> {
        let wires = self.scoped_wires(clause)?;
        let boxes = self.predicate(clause)?;
        Ok(TextDiagram::new(wires, boxes))
    }

    fn scoped_wires(&self, clause: &SyntaxTree) -> Result<Vec<DiagramWire>, DiagramError> {
        let mut wires: Vec<DiagramWire> = Vec::new();
        for (_, leaf) in crate::grammar::role_order_leaves(clause, self.language) {
            let Some(entity) = leaf.entity_index else {
                continue;
            };
            if wires.iter().any(|w| w.entity == entity) {
                continue;
            }
            let noun = self
                .labels
                .get(&entity)
                .cloned()
                .unwrap_or_else(|| leaf.word.clone().unwrap_or_default());
            wires.push(DiagramWire { entity, noun });
        }
        Ok(wires)
    }

    fn predicate_ivp(
        &self,
        node: &SyntaxTree,
        subject: EntityId,
    ) -> Result<DiagramBox, DiagramError> {
        if node.is_leaf() {
            return Ok(DiagramBox {
                kind: BoxKind::IvGate,
                label: leaf_word(node),
                wires: vec![subject],
                inner: Vec::new(),
            });
        }
        let rule = self.rule_of(node);
        match rule {
            RuleId::AdverbIv => {
                let contents =
                    self.predicate_ivp(node.role_child(rule, self.language, 1), subject)?;
                Ok(self.wrap_box(
                    BoxKind::AdverbBox,
                    leaf_word(node.role_child(rule, self.language, 0)),
                    contents.wires.clone(),
                    contents,
                ))
            }
            RuleId::AdpositionIv => {
                let contents =
                    self.predicate_ivp(node.role_child(rule, self.language, 0), subject)?;
                let object = self.core_entity(node.role_child(rule, self.language, 2))?;
                if contents.wires.contains(&object) {
                    return Err(DiagramError::WireConflict(format!(
                        "adposition object entity {object} already inside the verb phrase"
                    )));
                }
                let mut wires = contents.wires.clone();
                wires.push(object);
                Ok(self.wrap_box(
                    BoxKind::AdpositionBox,
                    leaf_word(node.role_child(rule, self.language, 1)),
                    wires,
                    contents,
                ))
            }
            RuleId::SentCompVerb => {
                let complement = node.role_child(rule, self.language, 1);
                let inner = self.clause_diagram(complement)?;
                if inner.has_wire(subject) {
                    return Err(DiagramError::WireConflict(format!(
                        "complement reuses the subject entity {subject}"
                    )));
                }
                let mut wires = vec![subject];
                wires.extend(inner.wire_entities());
                Ok(DiagramBox {
                    kind: BoxKind::ScopeBox,
                    label: leaf_word(node.role_child(rule, self.language, 0)),
                    wires,
                    inner: vec![inner],
                })
            }
            other => Err(DiagramError::WireConflict(format!(
                "rule {} cannot appear inside an intransitive verb phrase",
                other.name()
            ))),
        }
    }

    fn predicate_tvp(
        &self,
        node: &SyntaxTree,
        subject: EntityId,
        object: EntityId,
    ) -> Result<DiagramBox, DiagramError> {
        if node.is_leaf() {
            if subject == object {
                return Err(DiagramError::WireConflict(format!(
                    "transitive gate needs two distinct wires, got entity {subject} twice"
                )));
            }
            return Ok(DiagramBox {
                kind: BoxKind::TvGate,
                label: leaf_word(node),
                wires: vec![subject, object],
                inner: Vec::new(),
            });
        }
        let rule = self.rule_of(node);
        match rule {
            RuleId::AdverbTv => {
                let contents =
                    self.predicate_tvp(node.role_child(rule, self.language, 1), subject, object)?;
                Ok(self.wrap_box(
                    BoxKind::AdverbBox,
                    leaf_word(node.role_child(rule, self.language, 0)),
                    contents.wires.clone(),
                    contents,
                ))
            }
            other => Err(DiagramError::WireConflict(format!(
                "rule {} cannot appear inside a transitive verb phrase",
                other.name()
            ))),
        }
    }

    fn wrap_box(
        &self,
        kind: BoxKind,
        label: String,
        wires: Vec<EntityId>,
        contents: DiagramBox,
    ) -> DiagramBox {
        let inner_wires: Vec<DiagramWire> = contents
            .wires
            .iter()
            .map(|&entity| DiagramWire {
                entity,
                noun: self.labels.get(&entity).cloned().unwrap_or_default(),
            })
            .collect();
        DiagramBox {
            kind,
            label,
            wires,
            inner: vec![TextDiagram::new(inner_wires, vec![contents])],
        }
    }
}

fn leaf_word(node: &SyntaxTree) -> String {
    node.word.clone().unwrap_or_default()
}

/// Compose per-sentence fragments into one diagram.
///
/// Dashed stubs must pair an outgoing wire of an earlier fragment with an
/// incoming wire of a later one carrying the same entity; composed wires are
/// the union of fragment wires in first-appearance order.
pub fn compose(fragments: &[TextDiagram]) -> Result<TextDiagram, DiagramError> {
    // Validate and pair dashed links.
    let mut outgoing: Vec<(usize, EntityId, bool)> = Vec::new();
    for (idx, fragment) in fragments.iter().enumerate() {
        for link in &fragment.dangling {
            if !fragment.has_wire(link.entity) {
                return Err(DiagramError::EntityMismatch {
                    entity: link.entity,
                });
            }
            match link.direction {
                DashedDirection::Outgoing => outgoing.push((idx, link.entity, false)),
                DashedDirection::Incoming => {
                    let partner = outgoing.iter_mut().find(|(from, entity, used)| {
                        *from < idx && *entity == link.entity && !used
                    });
                    match partner {
                        Some(slot) => slot.2 = true,
                        None => {
                            return Err(DiagramError::DanglingLink {
                                entity: link.entity,
                            })
                        }
                    }
                }
            }
        }
    }
    if let Some((_, entity, _)) = outgoing.iter().find(|(_, _, used)| !used) {
        return Err(DiagramError::DanglingLink { entity: *entity });
    }

    let mut wires: Vec<DiagramWire> = Vec::new();
    let mut boxes = Vec::new();
    for fragment in fragments {
        for wire in &fragment.wires {
            if !wires.iter().any(|w| w.entity == wire.entity) {
                wires.push(wire.clone());
            }
        }
        boxes.extend(fragment.boxes.iter().cloned());
    }
    Ok(TextDiagram::new(wires, boxes))
}

/// Rewrite every adjective-plus-copula configuration to the bare adjective
/// gate. Terminates in at most one pass over the boxes and is idempotent; no
/// copula boxes remain afterwards.
pub fn reduce_copula(diagram: &TextDiagram) -> TextDiagram {
    let mut out = diagram.clone();
    reduce_in_place(&mut out);
    debug_assert!(!out.contains_copula());
    out
}

fn reduce_in_place(diagram: &mut TextDiagram) {
    let mut kept: Vec<DiagramBox> = Vec::with_capacity(diagram.boxes.len());
    for mut b in diagram.boxes.drain(..) {
        for inner in &mut b.inner {
            reduce_in_place(inner);
        }
        if b.kind == BoxKind::Copula {
            // The paired adjective is the nearest box on the copula's wire;
            // grammar emission always produces the pair adjacent.
            let wire = b.wires[0];
            debug_assert!(
                kept.iter()
                    .rev()
                    .find(|k| k.wires.contains(&wire))
                    .map(|k| k.kind == BoxKind::Adjective)
                    .unwrap_or(false),
                "copula without an adjacent adjective"
            );
            continue;
        }
        kept.push(b);
    }
    diagram.boxes = kept;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{EntityId, GeneratorTable, Language, NodeLabel, SyntaxTree};

    fn en_table() -> GeneratorTable {
        GeneratorTable::bare(Language::English)
    }

    fn ur_table() -> GeneratorTable {
        GeneratorTable::bare(Language::Urdu)
    }

    fn np(i: u32, word: &str) -> SyntaxTree {
        SyntaxTree::entity_leaf(NodeLabel::Np, EntityId(i), word)
    }

    #[test]
    fn english_transitive_fragment() {
        let tree = SyntaxTree::node(
            NodeLabel::S,
            vec![
                np(1, "John"),
                SyntaxTree::leaf(NodeLabel::Tvp, "reads"),
                np(2, "books"),
            ],
        );
        let fragment = tree_to_fragment(&tree, &en_table()).unwrap();
        assert_eq!(fragment.wires.len(), 2);
        assert_eq!(fragment.wires[0].noun, "John");
        assert_eq!(fragment.wires[1].noun, "books");
        assert_eq!(fragment.boxes.len(), 1);
        let gate = &fragment.boxes[0];
        assert_eq!(gate.kind, BoxKind::TvGate);
        assert_eq!(gate.label, "reads");
        assert_eq!(gate.wires, vec![EntityId(1), EntityId(2)]);
    }

    #[test]
    fn urdu_transitive_fragment_has_identical_shape() {
        let tree = SyntaxTree::node(
            NodeLabel::S,
            vec![
                np(1, "John"),
                np(2, "kitabein"),
                SyntaxTree::leaf(NodeLabel::Tvp, "parhta hai"),
            ],
        );
        let fragment = tree_to_fragment(&tree, &ur_table()).unwrap();
        assert_eq!(fragment.wires.len(), 2);
        assert_eq!(fragment.wires[0].noun, "John");
        assert_eq!(fragment.boxes.len(), 1);
        assert_eq!(fragment.boxes[0].kind, BoxKind::TvGate);
        assert_eq!(fragment.boxes[0].wires, vec![EntityId(1), EntityId(2)]);
    }

    #[test]
    fn intransitive_fragment() {
        let tree = SyntaxTree::node(
            NodeLabel::S,
            vec![np(1, "Fatima"), SyntaxTree::leaf(NodeLabel::Ivp, "smiles")],
        );
        let fragment = tree_to_fragment(&tree, &en_table()).unwrap();
        assert_eq!(fragment.wires.len(), 1);
        assert_eq!(fragment.boxes.len(), 1);
        assert_eq!(fragment.boxes[0].kind, BoxKind::IvGate);
    }

    #[test]
    fn invalid_tree_is_rejected() {
        let tree = SyntaxTree::node(
            NodeLabel::S,
            vec![np(1, "John"), SyntaxTree::leaf(NodeLabel::Tvp, "reads")],
        );
        let err = tree_to_fragment(&tree, &en_table()).unwrap_err();
        assert!(matches!(err, DiagramError::ValidationFailure(_)));
    }

    #[test]
    fn compose_sequences_boxes_on_shared_wires() {
        // "Fatima smiles. Fatima reads books." with shared entity 1.
        let first = tree_to_fragment(
            &SyntaxTree::node(
                NodeLabel::S,
                vec![np(1, "Fatima"), SyntaxTree::leaf(NodeLabel::Ivp, "smiles")],
            ),
            &en_table(),
        )
        .unwrap();
        let second = tree_to_fragment(
            &SyntaxTree::node(
                NodeLabel::S,
                vec![
                    np(1, "Fatima"),
                    SyntaxTree::leaf(NodeLabel::Tvp, "reads"),
                    np(2, "books"),
                ],
            ),
            &en_table(),
        )
        .unwrap();
        let composed = compose(&[first, second]).unwrap();
        assert_eq!(composed.wires.len(), 2);
        assert_eq!(composed.boxes.len(), 2);
        assert_eq!(composed.boxes[0].kind, BoxKind::IvGate);
        assert_eq!(composed.boxes[1].kind, BoxKind::TvGate);
        assert!(composed.dangling.is_empty());
    }

    #[test]
    fn compose_single_fragment_is_identity() {
        let fragment = tree_to_fragment(
            &SyntaxTree::node(
                NodeLabel::S,
                vec![np(1, "Fatima"), SyntaxTree::leaf(NodeLabel::Ivp, "smiles")],
            ),
            &en_table(),
        )
        .unwrap();
        let composed = compose(std::slice::from_ref(&fragment)).unwrap();
        assert_eq!(composed, fragment);
    }

    #[test]
    fn compose_rejects_stub_off_wire() {
        let mut fragment = tree_to_fragment(
            &SyntaxTree::node(
                NodeLabel::S,
                vec![np(1, "Fatima"), SyntaxTree::leaf(NodeLabel::Ivp, "smiles")],
            ),
            &en_table(),
        )
        .unwrap();
        fragment.dangling.push(DashedLink {
            entity: EntityId(9),
            direction: DashedDirection::Outgoing,
        });
        let err = compose(&[fragment]).unwrap_err();
        assert_eq!(
            err,
            DiagramError::EntityMismatch {
                entity: EntityId(9)
            }
        );
    }

    #[test]
    fn compose_rejects_unpaired_stub() {
        let mut fragment = tree_to_fragment(
            &SyntaxTree::node(
                NodeLabel::S,
                vec![np(1, "Fatima"), SyntaxTree::leaf(NodeLabel::Ivp, "smiles")],
            ),
            &en_table(),
        )
        .unwrap();
        fragment.dangling.push(DashedLink {
            entity: EntityId(1),
            direction: DashedDirection::Outgoing,
        });
        let err = compose(&[fragment]).unwrap_err();
        assert_eq!(
            err,
            DiagramError::DanglingLink {
                entity: EntityId(1)
            }
        );
    }

    fn copular_sentence_en() -> SyntaxTree {
        SyntaxTree::node(
            NodeLabel::S,
            vec![
                np(1, "teacher"),
                SyntaxTree::leaf(NodeLabel::Copula, "is"),
                SyntaxTree::leaf(NodeLabel::Adj, "honest"),
            ],
        )
    }

    #[test]
    fn copula_reduces_to_bare_adjective() {
        let fragment = tree_to_fragment(&copular_sentence_en(), &en_table()).unwrap();
        assert_eq!(fragment.boxes.len(), 2);
        let reduced = reduce_copula(&fragment);
        assert_eq!(reduced.boxes.len(), 1);
        assert_eq!(reduced.boxes[0].kind, BoxKind::Adjective);
        assert_eq!(reduced.boxes[0].label, "honest");
    }

    #[test]
    fn urdu_copula_reduces_the_same_way() {
        let tree = SyntaxTree::node(
            NodeLabel::S,
            vec![
                np(1, "ustad"),
                SyntaxTree::leaf(NodeLabel::Adj, "imandar"),
                SyntaxTree::leaf(NodeLabel::Copula, "hai"),
            ],
        );
        let fragment = tree_to_fragment(&tree, &ur_table()).unwrap();
        let reduced = reduce_copula(&fragment);
        assert_eq!(reduced.boxes.len(), 1);
        assert_eq!(reduced.boxes[0].kind, BoxKind::Adjective);
        assert_eq!(reduced.boxes[0].label, "imandar");
    }

    #[test]
    fn copula_free_diagram_is_a_fixed_point() {
        let fragment = tree_to_fragment(
            &SyntaxTree::node(
                NodeLabel::S,
                vec![np(1, "Fatima"), SyntaxTree::leaf(NodeLabel::Ivp, "smiles")],
            ),
            &en_table(),
        )
        .unwrap();
        let reduced = reduce_copula(&fragment);
        assert_eq!(reduced, fragment);
        assert_eq!(reduce_copula(&reduced), reduced);
    }

    #[test]
    fn wire_count_is_conserved_per_box() {
        // Boxes always carry equally many inputs and outputs by construction:
        // the wires field is a single pass-through list. Check the deepest
        // nesting the grammar produces.
        let complement = SyntaxTree::node(
            NodeLabel::S,
            vec![
                SyntaxTree::node(
                    NodeLabel::Np,
                    vec![SyntaxTree::leaf(NodeLabel::Adj, "honest"), np(2, "teacher")],
                ),
                SyntaxTree::node(
                    NodeLabel::Ivp,
                    vec![
                        SyntaxTree::leaf(NodeLabel::Adv, "passionately"),
                        SyntaxTree::leaf(NodeLabel::Ivp, "teach"),
                    ],
                ),
            ],
        );
        let tree = SyntaxTree::node(
            NodeLabel::S,
            vec![
                np(1, "student"),
                SyntaxTree::node(
                    NodeLabel::Ivp,
                    vec![SyntaxTree::leaf(NodeLabel::Scv, "sees"), complement],
                ),
            ],
        );
        let fragment = tree_to_fragment(&tree, &en_table()).unwrap();
        // Top level: honest prep gate, then the scope box.
        assert_eq!(fragment.boxes.len(), 2);
        assert_eq!(fragment.boxes[0].kind, BoxKind::Adjective);
        let scope = &fragment.boxes[1];
        assert_eq!(scope.kind, BoxKind::ScopeBox);
        assert_eq!(scope.wires, vec![EntityId(1), EntityId(2)]);
        let inner = &scope.inner[0];
        assert_eq!(inner.wires.len(), 1);
        assert_eq!(inner.boxes.len(), 1);
        assert_eq!(inner.boxes[0].kind, BoxKind::AdverbBox);
    }
}
