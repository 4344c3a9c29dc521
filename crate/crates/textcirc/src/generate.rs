//! The generative direction: sample well-formed text circuits, realize them
//! as hybrid text in either language, and check the round trip back to the
//! same canonical circuit.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::circuit::{ConjBox, Element, Gate, GateKind, ModKind, ModifierBox, TextCircuit, Wire};
use crate::compile::{compile_text, CompileError};
use crate::fixtures;
use crate::grammar::{EntityId, Language, LexCat, NodeLabel, RuleId, SyntaxTree, Vocabulary};
use crate::hybrid::{
    add_link, fuse, HybridText, LinkError, LinkSurface, NpOccurrence, PronominalLink,
};

/// SplitMix64: tiny, stable, deterministic across platforms and releases.
#[derive(Debug, Clone)]
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next() % n as u64) as usize
    }

    fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}

/// Relative sampling weights per element kind, in kind-rank order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KindWeights {
    pub adjective: u32,
    pub intransitive: u32,
    pub transitive: u32,
    pub adverb: u32,
    pub adposition: u32,
    pub sent_comp: u32,
    pub conjunction: u32,
}

impl Default for KindWeights {
    fn default() -> KindWeights {
        KindWeights {
            adjective: 2,
            intransitive: 3,
            transitive: 2,
            adverb: 1,
            adposition: 1,
            sent_comp: 1,
            conjunction: 1,
        }
    }
}

impl KindWeights {
    pub fn only_adjective() -> KindWeights {
        KindWeights {
            adjective: 1,
            intransitive: 0,
            transitive: 0,
            adverb: 0,
            adposition: 0,
            sent_comp: 0,
            conjunction: 0,
        }
    }

    pub fn only_transitive() -> KindWeights {
        KindWeights {
            adjective: 0,
            intransitive: 0,
            transitive: 1,
            adverb: 0,
            adposition: 0,
            sent_comp: 0,
            conjunction: 0,
        }
    }

    fn total(&self) -> u32 {
        self.adjective
            + self.intransitive
            + self.transitive
            + self.adverb
            + self.adposition
            + self.sent_comp
            + self.conjunction
    }
}

/// Parameters for circuit sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleParams {
    pub language: Language,
    pub max_wires: usize,
    pub max_elements: usize,
    /// Bound on box nesting; 0 samples bare gates only.
    pub max_depth: usize,
    pub kind_weights: KindWeights,
}

impl SampleParams {
    pub fn new(
        language: Language,
        max_wires: usize,
        max_elements: usize,
        max_depth: usize,
    ) -> SampleParams {
        SampleParams {
            language,
            max_wires,
            max_elements,
            max_depth,
            kind_weights: KindWeights::default(),
        }
    }
}

/// Choices the realizer makes where the circuit leaves text structure free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealizePolicy {
    /// Re-mentions at most this many sentences after the previous mention
    /// are realized as pronouns; farther ones repeat the noun. 0 never
    /// pronominalizes.
    pub pronoun_threshold: usize,
    /// Fuse linked adjacent sentences into relative clauses where the scope
    /// rules permit.
    pub fuse: bool,
}

impl Default for RealizePolicy {
    fn default() -> RealizePolicy {
        RealizePolicy {
            pronoun_threshold: 1,
            fuse: false,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("invalid sampling parameters: {0}")]
    ParamsInvalid(String),

    #[error("label {word:?} is not in the {cat:?} vocabulary")]
    VocabularyViolation { cat: LexCat, word: String },

    #[error("circuit cannot be realized in the fragment: {0}")]
    Unrealizable(String),

    #[error(transparent)]
    Compile(#[from] CompileError),

    #[error(transparent)]
    Link(#[from] LinkError),
}

/// Sample a well-formed circuit, deterministically per seed.
///
/// Wires are introduced in role order as elements request them, so the wire
/// list matches the first-mention order of any realization.
pub fn sample_circuit(seed: u64, params: &SampleParams) -> Result<TextCircuit, GenerateError> {
    if params.max_wires == 0 || params.max_elements == 0 {
        return Err(GenerateError::ParamsInvalid(
            "max_wires and max_elements must be positive".into(),
        ));
    }
    if params.kind_weights.total() == 0 {
        return Err(GenerateError::ParamsInvalid(
            "at least one kind weight must be positive".into(),
        ));
    }
    let vocab = fixtures::vocabulary(params.language);
    for (cat, name) in [
        (LexCat::Noun, "noun"),
        (LexCat::Adjective, "adjective"),
        (LexCat::IntransVerb, "verb"),
    ] {
        if vocab.content_words(cat).is_empty() {
            return Err(GenerateError::ParamsInvalid(format!(
                "fixture vocabulary has no {name}s"
            )));
        }
    }

    let mut sampler = Sampler {
        rng: Rng::new(seed),
        vocab,
        params,
        wires: Vec::new(),
        noun_pool: shuffled_nouns(vocab, seed),
    };
    let count = 1 + sampler.rng.below(params.max_elements);
    let mut elements = Vec::with_capacity(count);
    for _ in 0..count {
        elements.push(sampler.element(params.max_depth, &[], Family::Any));
    }
    let circuit = TextCircuit::new(sampler.wires, elements);
    circuit
        .validate()
        .expect("sampled circuits are well formed by construction");
    Ok(circuit)
}

fn shuffled_nouns(vocab: &Vocabulary, seed: u64) -> Vec<String> {
    let mut nouns: Vec<String> = vocab
        .content_words(LexCat::Noun)
        .into_iter()
        .map(str::to_string)
        .collect();
    let mut rng = Rng::new(seed ^ 0xa5a5_a5a5_a5a5_a5a5);
    for i in (1..nouns.len()).rev() {
        nouns.swap(i, rng.below(i + 1));
    }
    nouns
}

struct Sampler<'v> {
    rng: Rng,
    vocab: &'v Vocabulary,
    params: &'v SampleParams,
    wires: Vec<Wire>,
    noun_pool: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Adj,
    Iv,
    Tv,
    Adv,
    Adp,
    Scv,
    Cnj,
}

/// Grammatical context restricting which element kinds may be sampled.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    /// A whole clause: any element.
    Any,
    /// Contents of an adverb box: verb elements only.
    Verb,
    /// Contents of an adposition box: intransitive verb phrases only (the
    /// rule combining adpositions with transitive verbs is outside the
    /// fragment).
    IvOnly,
}

impl<'v> Sampler<'v> {
    fn placeable(&self, exclude: &[EntityId]) -> usize {
        let reusable = self
            .wires
            .iter()
            .filter(|w| !exclude.contains(&w.entity))
            .count();
        reusable + (self.params.max_wires - self.wires.len())
    }

    fn pick_wire(&mut self, exclude: &[EntityId]) -> EntityId {
        self.try_pick_wire(exclude)
            .expect("call sites guarantee a placeable wire")
    }

    fn try_pick_wire(&mut self, exclude: &[EntityId]) -> Option<EntityId> {
        let reusable: Vec<EntityId> = self
            .wires
            .iter()
            .map(|w| w.entity)
            .filter(|e| !exclude.contains(e))
            .collect();
        let can_fresh = self.wires.len() < self.params.max_wires;
        let fresh = match (reusable.is_empty(), can_fresh) {
            (true, true) => true,
            (true, false) => return None,
            (false, false) => false,
            (false, true) => self.rng.below(2) == 0,
        };
        Some(if fresh {
            let entity = EntityId(self.wires.len() as u32 + 1);
            let noun = self.noun_pool[self.wires.len() % self.noun_pool.len()].clone();
            self.wires.push(Wire { entity, noun });
            entity
        } else {
            *self.rng.pick(&reusable)
        })
    }

    fn word(&mut self, cat: LexCat) -> String {
        let words = self.vocab.content_words(cat);
        (*self.rng.pick(&words)).to_string()
    }

    fn choose_kind(&mut self, depth: usize, exclude: &[EntityId], family: Family) -> Kind {
        let w = &self.params.kind_weights;
        let two_wires = self.placeable(exclude) >= 2;
        let mut candidates: Vec<(Kind, u32)> = Vec::new();
        if family == Family::Any {
            candidates.push((Kind::Adj, w.adjective));
        }
        candidates.push((Kind::Iv, w.intransitive));
        if two_wires && family != Family::IvOnly {
            candidates.push((Kind::Tv, w.transitive));
        }
        if depth > 0 {
            candidates.push((Kind::Adv, w.adverb));
            if two_wires {
                candidates.push((Kind::Adp, w.adposition));
                candidates.push((Kind::Scv, w.sent_comp));
            }
            if family == Family::Any {
                candidates.push((Kind::Cnj, w.conjunction));
            }
        }
        let total: u32 = candidates.iter().map(|(_, weight)| weight).sum();
        if total == 0 {
            // Every weighted kind is infeasible in this context.
            return Kind::Iv;
        }
        let mut roll = self.rng.below(total as usize) as u32;
        for (kind, weight) in candidates {
            if roll < weight {
                return kind;
            }
            roll -= weight;
        }
        unreachable!("weighted choice covers the total")
    }

    /// Sample one element. Every call site guarantees at least one placeable
    /// wire; if a composite kind turns out infeasible mid-way (an adposition
    /// whose contents swallowed every wire), the partial draw is rolled back
    /// and a bare gate is emitted instead.
    fn element(&mut self, depth: usize, exclude: &[EntityId], family: Family) -> Element {
        let snapshot = self.wires.len();
        match self.try_element(depth, exclude, family) {
            Some(element) => element,
            None => {
                self.wires.truncate(snapshot);
                Element::Gate(Gate {
                    kind: GateKind::Intransitive,
                    label: self.word(LexCat::IntransVerb),
                    wires: vec![self.pick_wire(exclude)],
                })
            }
        }
    }

    fn try_element(
        &mut self,
        depth: usize,
        exclude: &[EntityId],
        family: Family,
    ) -> Option<Element> {
        Some(match self.choose_kind(depth, exclude, family) {
            Kind::Adj => Element::Gate(Gate {
                kind: GateKind::Adjective,
                label: self.word(LexCat::Adjective),
                wires: vec![self.pick_wire(exclude)],
            }),
            Kind::Iv => Element::Gate(Gate {
                kind: GateKind::Intransitive,
                label: self.word(LexCat::IntransVerb),
                wires: vec![self.pick_wire(exclude)],
            }),
            Kind::Tv => {
                let subject = self.pick_wire(exclude);
                let mut excl = exclude.to_vec();
                excl.push(subject);
                let object = self.pick_wire(&excl);
                Element::Gate(Gate {
                    kind: GateKind::Transitive,
                    label: self.word(LexCat::TransVerb),
                    wires: vec![subject, object],
                })
            }
            Kind::Adv => {
                let inner_family = if family == Family::IvOnly {
                    Family::IvOnly
                } else {
                    Family::Verb
                };
                let contents = self.element(depth - 1, exclude, inner_family);
                Element::Modifier(ModifierBox {
                    kind: ModKind::Adverb,
                    label: self.word(LexCat::Adverb),
                    wires: contents.wires().to_vec(),
                    contents: vec![contents],
                })
            }
            Kind::Adp => {
                let contents = self.element(depth - 1, exclude, Family::IvOnly);
                let mut excl = exclude.to_vec();
                excl.extend_from_slice(contents.wires());
                let object = self.try_pick_wire(&excl)?;
                let mut wires = contents.wires().to_vec();
                wires.push(object);
                Element::Modifier(ModifierBox {
                    kind: ModKind::Adposition,
                    label: self.word(LexCat::Adposition),
                    wires,
                    contents: vec![contents],
                })
            }
            Kind::Scv => {
                let subject = self.pick_wire(exclude);
                let mut excl = exclude.to_vec();
                excl.push(subject);
                let inner = self.element(depth - 1, &excl, Family::Any);
                let mut wires = vec![subject];
                wires.extend_from_slice(inner.wires());
                Element::Modifier(ModifierBox {
                    kind: ModKind::SentComp,
                    label: self.word(LexCat::ScompVerb),
                    wires,
                    contents: vec![inner],
                })
            }
            Kind::Cnj => {
                let left = self.element(depth - 1, exclude, Family::Any);
                let right = self.element(depth - 1, exclude, Family::Any);
                let mut wires: Vec<EntityId> = Vec::new();
                for &w in left.wires().iter().chain(right.wires()) {
                    if !wires.contains(&w) {
                        wires.push(w);
                    }
                }
                Element::Conj(ConjBox {
                    label: self.word(LexCat::Conjunction),
                    wires,
                    left: vec![left],
                    right: vec![right],
                })
            }
        })
    }
}

struct MentionRecord {
    entity: EntityId,
    link_to_previous: Option<LinkSurface>,
}

struct Realizer<'v> {
    language: Language,
    vocab: &'v Vocabulary,
    policy: RealizePolicy,
    nouns: BTreeMap<EntityId, String>,
    /// Last mention per entity: (sentence, role-order position filled later).
    last_mention: BTreeMap<EntityId, NpOccurrence>,
    current_sentence: usize,
    mentions: Vec<MentionRecord>,
}

impl<'v> Realizer<'v> {
    fn check_word(&self, cat: LexCat, word: &str) -> Result<(), GenerateError> {
        if self.vocab.admits(cat, word) {
            Ok(())
        } else {
            Err(GenerateError::VocabularyViolation {
                cat,
                word: word.to_string(),
            })
        }
    }

    fn mention(&mut self, entity: EntityId) -> Result<SyntaxTree, GenerateError> {
        let noun = self.nouns.get(&entity).cloned().ok_or_else(|| {
            GenerateError::Unrealizable(format!("element wire {entity} is not a circuit wire"))
        })?;
        self.check_word(LexCat::Noun, &noun)?;
        let seen = self.last_mention.contains_key(&entity);
        let (word, link) = if !seen {
            (noun, None)
        } else {
            let gap = self.current_sentence - self.last_mention[&entity].sentence;
            let pronouns = self.vocab.pronouns();
            if gap <= self.policy.pronoun_threshold && !pronouns.is_empty() {
                (pronouns[0].to_string(), Some(LinkSurface::Pronoun))
            } else {
                (noun, Some(LinkSurface::RepeatedNoun))
            }
        };
        self.mentions.push(MentionRecord {
            entity,
            link_to_previous: link,
        });
        Ok(SyntaxTree::entity_leaf(NodeLabel::Np, entity, word))
    }

    /// Assemble children in a rule's surface order from canonical order.
    fn assemble(&self, rule: RuleId, canonical: Vec<SyntaxTree>) -> SyntaxTree {
        let mut children: Vec<Option<SyntaxTree>> = vec![None; canonical.len()];
        for (pos, child) in canonical.into_iter().enumerate() {
            children[rule.child_index(self.language, pos)] = Some(child);
        }
        SyntaxTree::node(
            match rule {
                RuleId::AdverbIv | RuleId::AdpositionIv | RuleId::SentCompVerb => NodeLabel::Ivp,
                RuleId::AdverbTv => NodeLabel::Tvp,
                _ => NodeLabel::S,
            },
            children.into_iter().map(Option::unwrap).collect(),
        )
    }

    fn clause(&mut self, element: &Element) -> Result<SyntaxTree, GenerateError> {
        match element {
            Element::Gate(g) => match g.kind {
                GateKind::Adjective => {
                    self.check_word(LexCat::Adjective, &g.label)?;
                    let subject = self.mention(g.wires[0])?;
                    Ok(self.assemble(
                        RuleId::AdjectivePost,
                        vec![
                            subject,
                            SyntaxTree::leaf(NodeLabel::Copula, self.language.copula_word()),
                            SyntaxTree::leaf(NodeLabel::Adj, g.label.clone()),
                        ],
                    ))
                }
                GateKind::Intransitive => {
                    self.check_word(LexCat::IntransVerb, &g.label)?;
                    let subject = self.mention(g.wires[0])?;
                    Ok(self.assemble(
                        RuleId::IntransVerb,
                        vec![subject, SyntaxTree::leaf(NodeLabel::Ivp, g.label.clone())],
                    ))
                }
                GateKind::Transitive => {
                    self.check_word(LexCat::TransVerb, &g.label)?;
                    let subject = self.mention(g.wires[0])?;
                    let object = self.mention(g.wires[1])?;
                    Ok(self.assemble(
                        RuleId::TransVerb,
                        vec![
                            subject,
                            SyntaxTree::leaf(NodeLabel::Tvp, g.label.clone()),
                            object,
                        ],
                    ))
                }
            },
            Element::Modifier(m) => match m.kind {
                ModKind::Adverb => {
                    self.check_word(LexCat::Adverb, &m.label)?;
                    let inner = self.clause(&m.contents[0])?;
                    self.wrap_verb_phrase(inner, &m.label)
                }
                ModKind::Adposition => {
                    self.check_word(LexCat::Adposition, &m.label)?;
                    let inner = self.clause(&m.contents[0])?;
                    let object_wire = *m.wires.last().expect("validated adposition");
                    let rule = inner
                        .rule(self.language)
                        .filter(|&r| r == RuleId::IntransVerb)
                        .ok_or_else(|| {
                            GenerateError::Unrealizable(
                                "adpositions only modify intransitive verb phrases".into(),
                            )
                        })?;
                    let ivp_idx = rule.child_index(self.language, 1);
                    let object = self.mention(object_wire)?;
                    let mut clause = inner;
                    let ivp = clause.children[ivp_idx].clone();
                    clause.children[ivp_idx] = self.assemble(
                        RuleId::AdpositionIv,
                        vec![
                            ivp,
                            SyntaxTree::leaf(NodeLabel::Adp, m.label.clone()),
                            object,
                        ],
                    );
                    Ok(clause)
                }
                ModKind::SentComp => {
                    self.check_word(LexCat::ScompVerb, &m.label)?;
                    if m.contents.len() != 1 {
                        return Err(GenerateError::Unrealizable(
                            "a sentential complement realizes exactly one clause".into(),
                        ));
                    }
                    let subject = self.mention(m.wires[0])?;
                    let complement = self.clause(&m.contents[0])?;
                    let ivp = self.assemble(
                        RuleId::SentCompVerb,
                        vec![
                            SyntaxTree::leaf(NodeLabel::Scv, m.label.clone()),
                            complement,
                        ],
                    );
                    Ok(self.assemble(RuleId::IntransVerb, vec![subject, ivp]))
                }
            },
            Element::Conj(c) => {
                self.check_word(LexCat::Conjunction, &c.label)?;
                if c.left.len() != 1 || c.right.len() != 1 {
                    return Err(GenerateError::Unrealizable(
                        "conjunction operands realize exactly one clause each".into(),
                    ));
                }
                let left = self.clause(&c.left[0])?;
                let right = self.clause(&c.right[0])?;
                Ok(self.assemble(
                    RuleId::Conjunction,
                    vec![
                        left,
                        SyntaxTree::leaf(NodeLabel::Cnj, c.label.clone()),
                        right,
                    ],
                ))
            }
        }
    }

    /// Wrap the verb phrase of a realized clause in an adverb.
    fn wrap_verb_phrase(
        &mut self,
        mut clause: SyntaxTree,
        adverb: &str,
    ) -> Result<SyntaxTree, GenerateError> {
        let rule = clause.rule(self.language).ok_or_else(|| {
            GenerateError::Unrealizable("adverb applied to a malformed clause".into())
        })?;
        let (phrase_rule, idx) = match rule {
            RuleId::IntransVerb => (RuleId::AdverbIv, rule.child_index(self.language, 1)),
            RuleId::TransVerb => (RuleId::AdverbTv, rule.child_index(self.language, 1)),
            _ => {
                return Err(GenerateError::Unrealizable(
                    "adverbs only modify verb phrases".into(),
                ))
            }
        };
        let phrase = clause.children[idx].clone();
        clause.children[idx] = self.assemble(
            phrase_rule,
            vec![SyntaxTree::leaf(NodeLabel::Adv, adverb.to_string()), phrase],
        );
        Ok(clause)
    }
}

/// Realize a circuit as a hybrid text whose compilation canonicalizes back to
/// it: one sentence per top-level element, re-mentions resolved by policy.
pub fn circuit_to_text(
    circuit: &TextCircuit,
    language: Language,
    policy: RealizePolicy,
) -> Result<HybridText, GenerateError> {
    circuit
        .validate()
        .map_err(|err| GenerateError::Unrealizable(format!("malformed circuit: {err}")))?;
    let vocab = fixtures::vocabulary(language);
    let mut realizer = Realizer {
        language,
        vocab,
        policy,
        nouns: circuit
            .wires
            .iter()
            .map(|w| (w.entity, w.noun.clone()))
            .collect(),
        last_mention: BTreeMap::new(),
        current_sentence: 0,
        mentions: Vec::new(),
    };

    let mut sentences = Vec::new();
    let mut links = Vec::new();
    for element in &circuit.elements {
        realizer.current_sentence = sentences.len();
        realizer.mentions.clear();
        let sentence = realizer.clause(element)?;
        // Mentions were created in role order; match them with the NP leaf
        // paths of the finished tree, also in role order.
        let leaf_paths: Vec<Vec<usize>> = crate::grammar::role_order_leaves(&sentence, language)
            .into_iter()
            .filter(|(_, leaf)| leaf.label == NodeLabel::Np)
            .map(|(path, _)| path)
            .collect();
        assert_eq!(leaf_paths.len(), realizer.mentions.len());
        for (path, record) in leaf_paths.into_iter().zip(realizer.mentions.drain(..)) {
            let occ = NpOccurrence::new(sentences.len(), path);
            if let Some(surface) = record.link_to_previous {
                let referent = realizer.last_mention[&record.entity].clone();
                links.push(PronominalLink {
                    referent,
                    anaphor: occ.clone(),
                    surface,
                });
            }
            realizer.last_mention.insert(record.entity, occ);
        }
        sentences.push(sentence);
    }

    let mut text = HybridText::new(language, sentences);
    for link in links {
        text = add_link(&text, link)?;
    }
    if policy.fuse {
        text = fuse_where_possible(text);
    }
    Ok(text)
}

/// Greedily fuse adjacent linked sentences while any eligible link remains.
fn fuse_where_possible(mut text: HybridText) -> HybridText {
    loop {
        let mut fused_any = false;
        for link in text.links.clone() {
            if link.surface == LinkSurface::RelativePronoun
                || link.anaphor.sentence != link.referent.sentence + 1
            {
                continue;
            }
            if let Ok(next) = fuse(&text, link) {
                text = next;
                fused_any = true;
                break;
            }
        }
        if !fused_any {
            return text;
        }
    }
}

/// Result of one generation round trip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub ok: bool,
    pub original: String,
    pub recompiled: String,
}

/// Realize and recompile: ok iff the canonical forms agree exactly.
pub fn roundtrip(
    circuit: &TextCircuit,
    language: Language,
    policy: RealizePolicy,
) -> Result<RoundtripReport, GenerateError> {
    let original = circuit
        .canonicalize()
        .map_err(|err| GenerateError::Unrealizable(format!("malformed circuit: {err}")))?;
    let text = circuit_to_text(circuit, language, policy)?;
    let recompiled_circuit = compile_text(&text)?;
    let recompiled = recompiled_circuit
        .canonicalize()
        .map_err(CompileError::Circuit)?;
    Ok(RoundtripReport {
        ok: original == recompiled,
        original,
        recompiled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::linearize;

    #[test]
    fn smallest_params_give_single_adjective_gate() {
        let params = SampleParams {
            language: Language::English,
            max_wires: 1,
            max_elements: 1,
            max_depth: 0,
            kind_weights: KindWeights::only_adjective(),
        };
        let circuit = sample_circuit(7, &params).unwrap();
        assert_eq!(circuit.wires.len(), 1);
        assert_eq!(circuit.elements.len(), 1);
        assert!(matches!(
            &circuit.elements[0],
            Element::Gate(g) if g.kind == GateKind::Adjective
        ));
    }

    #[test]
    fn two_wire_transitive_shape() {
        let params = SampleParams {
            language: Language::English,
            max_wires: 2,
            max_elements: 1,
            max_depth: 0,
            kind_weights: KindWeights::only_transitive(),
        };
        let circuit = sample_circuit(3, &params).unwrap();
        assert_eq!(circuit.elements.len(), 1);
        match &circuit.elements[0] {
            Element::Gate(g) => {
                assert_eq!(g.kind, GateKind::Transitive);
                assert_eq!(g.wires.len(), 2);
            }
            other => panic!("expected a transitive gate, got {other:?}"),
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let params = SampleParams::new(Language::English, 4, 6, 2);
        assert_eq!(
            sample_circuit(42, &params).unwrap(),
            sample_circuit(42, &params).unwrap()
        );
        assert_ne!(
            sample_circuit(42, &params).unwrap(),
            sample_circuit(43, &params).unwrap()
        );
    }

    #[test]
    fn zero_params_are_invalid() {
        let params = SampleParams::new(Language::English, 0, 3, 1);
        assert!(matches!(
            sample_circuit(1, &params),
            Err(GenerateError::ParamsInvalid(_))
        ));
    }

    fn reads_circuit() -> TextCircuit {
        use crate::circuit::{Gate, GateKind, Wire};
        TextCircuit::new(
            vec![
                Wire {
                    entity: EntityId(1),
                    noun: "John".into(),
                },
                Wire {
                    entity: EntityId(2),
                    noun: "books".into(),
                },
            ],
            vec![Element::Gate(Gate {
                kind: GateKind::Transitive,
                label: "reads".into(),
                wires: vec![EntityId(1), EntityId(2)],
            })],
        )
    }

    #[test]
    fn reads_realizes_in_english() {
        let text = circuit_to_text(
            &reads_circuit(),
            Language::English,
            RealizePolicy::default(),
        )
        .unwrap();
        assert_eq!(text.sentences.len(), 1);
        assert_eq!(linearize(&text.sentences[0]).unwrap(), "John reads books");
    }

    #[test]
    fn reads_realizes_in_urdu() {
        let circuit = TextCircuit::new(
            vec![
                Wire {
                    entity: EntityId(1),
                    noun: "John".into(),
                },
                Wire {
                    entity: EntityId(2),
                    noun: "kitabein".into(),
                },
            ],
            vec![Element::Gate(Gate {
                kind: GateKind::Transitive,
                label: "parhta hai".into(),
                wires: vec![EntityId(1), EntityId(2)],
            })],
        );
        let text = circuit_to_text(&circuit, Language::Urdu, RealizePolicy::default()).unwrap();
        assert_eq!(
            linearize(&text.sentences[0]).unwrap(),
            "John kitabein parhta hai"
        );
    }

    #[test]
    fn repeated_wire_roundtrips_with_both_policies() {
        use crate::circuit::{Gate, GateKind, Wire};
        let circuit = TextCircuit::new(
            vec![Wire {
                entity: EntityId(1),
                noun: "Fatima".into(),
            }],
            vec![
                Element::Gate(Gate {
                    kind: GateKind::Intransitive,
                    label: "smiles".into(),
                    wires: vec![EntityId(1)],
                }),
                Element::Gate(Gate {
                    kind: GateKind::Intransitive,
                    label: "runs".into(),
                    wires: vec![EntityId(1)],
                }),
            ],
        );
        for policy in [
            RealizePolicy {
                pronoun_threshold: 9,
                fuse: false,
            },
            RealizePolicy {
                pronoun_threshold: 0,
                fuse: false,
            },
        ] {
            let report = roundtrip(&circuit, Language::English, policy).unwrap();
            assert!(report.ok, "{report:?}");
        }
    }

    #[test]
    fn pronoun_and_repeat_policies_are_a_non_injectivity_witness() {
        use crate::circuit::{Gate, GateKind, Wire};
        let circuit = TextCircuit::new(
            vec![Wire {
                entity: EntityId(1),
                noun: "Fatima".into(),
            }],
            vec![
                Element::Gate(Gate {
                    kind: GateKind::Intransitive,
                    label: "smiles".into(),
                    wires: vec![EntityId(1)],
                }),
                Element::Gate(Gate {
                    kind: GateKind::Intransitive,
                    label: "runs".into(),
                    wires: vec![EntityId(1)],
                }),
            ],
        );
        let pronoun = circuit_to_text(
            &circuit,
            Language::English,
            RealizePolicy {
                pronoun_threshold: 9,
                fuse: false,
            },
        )
        .unwrap();
        let repeat = circuit_to_text(
            &circuit,
            Language::English,
            RealizePolicy {
                pronoun_threshold: 0,
                fuse: false,
            },
        )
        .unwrap();
        let pronoun_surface = linearize(&pronoun.sentences[1]).unwrap();
        let repeat_surface = linearize(&repeat.sentences[1]).unwrap();
        assert_ne!(pronoun_surface, repeat_surface);
        assert_eq!(
            compile_text(&pronoun).unwrap().canonicalize().unwrap(),
            compile_text(&repeat).unwrap().canonicalize().unwrap()
        );
    }

    #[test]
    fn multi_clause_inner_circuits_are_unrealizable() {
        use crate::circuit::{Gate, GateKind, ModKind, ModifierBox, Wire};
        let circuit = TextCircuit::new(
            vec![
                Wire {
                    entity: EntityId(1),
                    noun: "John".into(),
                },
                Wire {
                    entity: EntityId(2),
                    noun: "teacher".into(),
                },
            ],
            vec![Element::Modifier(ModifierBox {
                kind: ModKind::SentComp,
                label: "sees".into(),
                wires: vec![EntityId(1), EntityId(2)],
                contents: vec![
                    Element::Gate(Gate {
                        kind: GateKind::Intransitive,
                        label: "smiles".into(),
                        wires: vec![EntityId(2)],
                    }),
                    Element::Gate(Gate {
                        kind: GateKind::Intransitive,
                        label: "runs".into(),
                        wires: vec![EntityId(2)],
                    }),
                ],
            })],
        );
        let err =
            circuit_to_text(&circuit, Language::English, RealizePolicy::default()).unwrap_err();
        assert!(matches!(err, GenerateError::Unrealizable(_)));
    }

    #[test]
    fn out_of_vocabulary_label_is_rejected() {
        use crate::circuit::{Gate, GateKind, Wire};
        let circuit = TextCircuit::new(
            vec![Wire {
                entity: EntityId(1),
                noun: "John".into(),
            }],
            vec![Element::Gate(Gate {
                kind: GateKind::Intransitive,
                label: "quaffs".into(),
                wires: vec![EntityId(1)],
            })],
        );
        let err =
            circuit_to_text(&circuit, Language::English, RealizePolicy::default()).unwrap_err();
        assert!(matches!(err, GenerateError::VocabularyViolation { .. }));
    }

    #[test]
    fn sampled_batch_roundtrips_in_both_languages() {
        for language in [Language::English, Language::Urdu] {
            let params = SampleParams::new(language, 3, 4, 2);
            for seed in 0..50 {
                let circuit = sample_circuit(seed, &params).unwrap();
                let policy = RealizePolicy {
                    pronoun_threshold: (seed % 3) as usize,
                    fuse: seed % 2 == 0,
                };
                let report = roundtrip(&circuit, language, policy).unwrap();
                assert!(
                    report.ok,
                    "seed {seed} in {language}: {} != {}",
                    report.original, report.recompiled
                );
            }
        }
    }
}
