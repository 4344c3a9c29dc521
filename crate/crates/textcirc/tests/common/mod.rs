//! Shared helpers for the integration and acceptance suites: a deterministic
//! test RNG, random tree/text generation over the fixture vocabulary,
//! exhaustive enumeration of small derivations, and a brute-force
//! linear-extension oracle for the canonicalization checks.

#![allow(dead_code)]

use textcirc::circuit::{Element, TextCircuit};
use textcirc::fixtures;
use textcirc::grammar::{EntityId, Language, LexCat, NodeLabel, SyntaxTree, Vocabulary};
use textcirc::hybrid::{add_link, HybridText, LinkSurface, NpOccurrence, PronominalLink};

/// SplitMix64, test-side copy so the oracle stays independent of the crate.
#[derive(Debug, Clone)]
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> TestRng {
        TestRng(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next() % n as u64) as usize
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }

    pub fn chance(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }
}

/// Random generator for valid English trees and texts over the fixture
/// vocabulary.
pub struct TreeGen {
    pub rng: TestRng,
    vocab: &'static Vocabulary,
    next_entity: u32,
}

impl TreeGen {
    pub fn new(seed: u64) -> TreeGen {
        TreeGen {
            rng: TestRng::new(seed),
            vocab: fixtures::vocabulary(Language::English),
            next_entity: 1,
        }
    }

    fn word(&mut self, cat: LexCat) -> String {
        let words = self.vocab.content_words(cat);
        (*self.rng.pick(&words)).to_string()
    }

    fn np(&mut self, depth: usize) -> SyntaxTree {
        let entity = EntityId(self.next_entity);
        self.next_entity += 1;
        let mut node = SyntaxTree::entity_leaf(NodeLabel::Np, entity, self.word(LexCat::Noun));
        let mut budget = depth;
        while budget > 0 && self.rng.chance(1, 3) {
            node = SyntaxTree::node(
                NodeLabel::Np,
                vec![
                    SyntaxTree::leaf(NodeLabel::Adj, self.word(LexCat::Adjective)),
                    node,
                ],
            );
            budget -= 1;
        }
        node
    }

    fn ivp(&mut self, depth: usize) -> SyntaxTree {
        if depth == 0 || self.rng.chance(1, 2) {
            return SyntaxTree::leaf(NodeLabel::Ivp, self.word(LexCat::IntransVerb));
        }
        match self.rng.below(3) {
            0 => SyntaxTree::node(
                NodeLabel::Ivp,
                vec![
                    SyntaxTree::leaf(NodeLabel::Adv, self.word(LexCat::Adverb)),
                    self.ivp(depth - 1),
                ],
            ),
            1 => {
                let ivp = self.ivp(depth - 1);
                let object = self.np(depth - 1);
                SyntaxTree::node(
                    NodeLabel::Ivp,
                    vec![
                        ivp,
                        SyntaxTree::leaf(NodeLabel::Adp, self.word(LexCat::Adposition)),
                        object,
                    ],
                )
            }
            _ => SyntaxTree::node(
                NodeLabel::Ivp,
                vec![
                    SyntaxTree::leaf(NodeLabel::Scv, self.word(LexCat::ScompVerb)),
                    self.clause(depth - 1),
                ],
            ),
        }
    }

    fn tvp(&mut self, depth: usize) -> SyntaxTree {
        if depth == 0 || self.rng.chance(2, 3) {
            return SyntaxTree::leaf(NodeLabel::Tvp, self.word(LexCat::TransVerb));
        }
        SyntaxTree::node(
            NodeLabel::Tvp,
            vec![
                SyntaxTree::leaf(NodeLabel::Adv, self.word(LexCat::Adverb)),
                self.tvp(depth - 1),
            ],
        )
    }

    /// A random valid sentence tree.
    pub fn clause(&mut self, depth: usize) -> SyntaxTree {
        let roll = if depth == 0 {
            self.rng.below(3)
        } else {
            self.rng.below(4)
        };
        match roll {
            0 => {
                let subject = self.np(depth);
                SyntaxTree::node(NodeLabel::S, vec![subject, self.ivp(depth)])
            }
            1 => {
                let subject = self.np(depth);
                let verb = self.tvp(depth);
                let object = self.np(depth);
                SyntaxTree::node(NodeLabel::S, vec![subject, verb, object])
            }
            2 => {
                let subject = self.np(depth);
                SyntaxTree::node(
                    NodeLabel::S,
                    vec![
                        subject,
                        SyntaxTree::leaf(NodeLabel::Copula, "is"),
                        SyntaxTree::leaf(NodeLabel::Adj, self.word(LexCat::Adjective)),
                    ],
                )
            }
            _ => {
                let left = self.clause(depth - 1);
                let right = self.clause(depth - 1);
                SyntaxTree::node(
                    NodeLabel::S,
                    vec![
                        left,
                        SyntaxTree::leaf(NodeLabel::Cnj, self.word(LexCat::Conjunction)),
                        right,
                    ],
                )
            }
        }
    }

    /// A random multi-sentence English text with coreference links.
    pub fn text(&mut self, max_sentences: usize, depth: usize) -> HybridText {
        let count = 1 + self.rng.below(max_sentences);
        let sentences: Vec<SyntaxTree> = (0..count).map(|_| self.clause(depth)).collect();
        let mut text = HybridText::new(Language::English, sentences);
        for sentence in 1..count {
            if !self.rng.chance(1, 2) {
                continue;
            }
            let anaphors = np_occurrences(&text.sentences[sentence], sentence);
            let referents = np_occurrences(&text.sentences[sentence - 1], sentence - 1);
            if anaphors.is_empty() || referents.is_empty() {
                continue;
            }
            let anaphor = self.rng.pick(&anaphors).clone();
            let referent = self.rng.pick(&referents).clone();
            let surface = if self.rng.chance(1, 2) {
                LinkSurface::Pronoun
            } else {
                LinkSurface::RepeatedNoun
            };
            // Make the anaphor's surface form match its role.
            let new_word = match surface {
                LinkSurface::Pronoun => self.vocab.pronouns()[0].to_string(),
                _ => text
                    .occurrence(&referent)
                    .and_then(|leaf| leaf.word.clone())
                    .unwrap_or_default(),
            };
            if let Some(leaf) = text.sentences[anaphor.sentence]
                .at_path_mut(&anaphor.path)
                .filter(|l| l.is_leaf())
            {
                leaf.word = Some(new_word);
            }
            if let Ok(linked) = add_link(
                &text,
                PronominalLink {
                    referent,
                    anaphor,
                    surface,
                },
            ) {
                text = linked;
            }
        }
        text
    }
}

/// NP leaf occurrences of one sentence, in surface order.
pub fn np_occurrences(sentence: &SyntaxTree, index: usize) -> Vec<NpOccurrence> {
    sentence
        .leaves()
        .into_iter()
        .filter(|(_, leaf)| leaf.label == NodeLabel::Np && leaf.entity_index.is_some())
        .map(|(path, _)| NpOccurrence::new(index, path))
        .collect()
}

/// All fully lexicalized English trees derivable with at most `budget`
/// structural rule applications, over the fixture vocabulary. Calls `visit`
/// once per tree and returns the count.
pub fn for_each_derivation(budget: usize, mut visit: impl FnMut(&SyntaxTree)) -> usize {
    let vocab = fixtures::vocabulary(Language::English);
    let mut count = 0;
    for (skeleton, _) in expand_s(budget) {
        lexicalize(&skeleton, vocab, &mut |tree| {
            count += 1;
            visit(tree);
        });
    }
    count
}

fn slot(label: NodeLabel) -> SyntaxTree {
    SyntaxTree::node(label, Vec::new())
}

fn expand_np(budget: usize) -> Vec<(SyntaxTree, usize)> {
    let mut out = vec![(slot(NodeLabel::Np), 0)];
    if budget >= 1 {
        for (inner, used) in expand_np(budget - 1) {
            out.push((
                SyntaxTree::node(NodeLabel::Np, vec![slot(NodeLabel::Adj), inner]),
                used + 1,
            ));
        }
    }
    out
}

fn expand_ivp(budget: usize) -> Vec<(SyntaxTree, usize)> {
    let mut out = vec![(slot(NodeLabel::Ivp), 0)];
    if budget == 0 {
        return out;
    }
    for (inner, used) in expand_ivp(budget - 1) {
        out.push((
            SyntaxTree::node(NodeLabel::Ivp, vec![slot(NodeLabel::Adv), inner]),
            used + 1,
        ));
    }
    for (ivp, used_ivp) in expand_ivp(budget - 1) {
        for (np, used_np) in expand_np(budget - 1 - used_ivp) {
            out.push((
                SyntaxTree::node(NodeLabel::Ivp, vec![ivp.clone(), slot(NodeLabel::Adp), np]),
                used_ivp + used_np + 1,
            ));
        }
    }
    for (s, used) in expand_s(budget - 1) {
        out.push((
            SyntaxTree::node(NodeLabel::Ivp, vec![slot(NodeLabel::Scv), s]),
            used + 1,
        ));
    }
    out
}

fn expand_tvp(budget: usize) -> Vec<(SyntaxTree, usize)> {
    let mut out = vec![(slot(NodeLabel::Tvp), 0)];
    if budget >= 1 {
        for (inner, used) in expand_tvp(budget - 1) {
            out.push((
                SyntaxTree::node(NodeLabel::Tvp, vec![slot(NodeLabel::Adv), inner]),
                used + 1,
            ));
        }
    }
    out
}

fn expand_s(budget: usize) -> Vec<(SyntaxTree, usize)> {
    let mut out = Vec::new();
    if budget == 0 {
        return out;
    }
    let inner = budget - 1;
    for (np, used_np) in expand_np(inner) {
        for (ivp, used_ivp) in expand_ivp(inner - used_np) {
            out.push((
                SyntaxTree::node(NodeLabel::S, vec![np.clone(), ivp]),
                used_np + used_ivp + 1,
            ));
        }
    }
    for (subj, used_subj) in expand_np(inner) {
        for (tvp, used_tvp) in expand_tvp(inner - used_subj) {
            for (obj, used_obj) in expand_np(inner - used_subj - used_tvp) {
                out.push((
                    SyntaxTree::node(NodeLabel::S, vec![subj.clone(), tvp.clone(), obj]),
                    used_subj + used_tvp + used_obj + 1,
                ));
            }
        }
    }
    for (np, used_np) in expand_np(inner) {
        out.push((
            SyntaxTree::node(
                NodeLabel::S,
                vec![np, slot(NodeLabel::Copula), slot(NodeLabel::Adj)],
            ),
            used_np + 1,
        ));
    }
    for (left, used_left) in expand_s(inner) {
        for (right, used_right) in expand_s(inner - used_left) {
            out.push((
                SyntaxTree::node(
                    NodeLabel::S,
                    vec![left.clone(), slot(NodeLabel::Cnj), right],
                ),
                used_left + used_right + 1,
            ));
        }
    }
    out
}

/// Fill every leaf slot of a skeleton with each admissible vocabulary choice.
fn lexicalize(skeleton: &SyntaxTree, vocab: &Vocabulary, visit: &mut impl FnMut(&SyntaxTree)) {
    let mut paths = Vec::new();
    collect_slot_paths(skeleton, &mut Vec::new(), &mut paths);
    let mut tree = skeleton.clone();
    fill_slots(&mut tree, vocab, &paths, 0, visit);
}

fn collect_slot_paths(node: &SyntaxTree, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if node.children.is_empty() {
        out.push(path.clone());
        return;
    }
    for (i, child) in node.children.iter().enumerate() {
        path.push(i);
        collect_slot_paths(child, path, out);
        path.pop();
    }
}

fn fill_slots(
    tree: &mut SyntaxTree,
    vocab: &Vocabulary,
    paths: &[Vec<usize>],
    at: usize,
    visit: &mut impl FnMut(&SyntaxTree),
) {
    if at == paths.len() {
        let mut finished = tree.clone();
        let mut next = 1u32;
        index_nps(&mut finished, &mut next);
        visit(&finished);
        return;
    }
    let label = tree.at_path(&paths[at]).expect("slot path resolves").label;
    let choices: Vec<String> = match label {
        NodeLabel::Copula => vec!["is".to_string()],
        _ => {
            let cat = label.leaf_cat().expect("slots are preterminals");
            vocab
                .content_words(cat)
                .into_iter()
                .map(str::to_string)
                .collect()
        }
    };
    for word in choices {
        tree.at_path_mut(&paths[at])
            .expect("slot path resolves")
            .word = Some(word);
        fill_slots(tree, vocab, paths, at + 1, visit);
    }
    tree.at_path_mut(&paths[at])
        .expect("slot path resolves")
        .word = None;
}

fn index_nps(node: &mut SyntaxTree, next: &mut u32) {
    if node.children.is_empty() {
        if node.label == NodeLabel::Np {
            node.entity_index = Some(EntityId(*next));
            *next += 1;
        }
        return;
    }
    for child in &mut node.children {
        index_nps(child, next);
    }
}

/// Brute-force enumeration of every linear extension of a circuit's
/// element partial order (derived from shared wires, independent of the
/// library's canonical ordering). Calls `visit` with each reordered element
/// list.
pub fn for_each_linear_extension(
    circuit: &TextCircuit,
    mut visit: impl FnMut(&[Element]),
) -> usize {
    let n = circuit.elements.len();
    // predecessors[j] = indices that must precede j (consecutive on a wire).
    let mut predecessors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for wire in &circuit.wires {
        let on_wire: Vec<usize> = (0..n)
            .filter(|&i| circuit.elements[i].wires().contains(&wire.entity))
            .collect();
        for pair in on_wire.windows(2) {
            predecessors[pair[1]].push(pair[0]);
        }
    }
    let mut used = vec![false; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut count = 0usize;
    fn recurse(
        n: usize,
        predecessors: &[Vec<usize>],
        used: &mut [bool],
        order: &mut Vec<usize>,
        circuit: &TextCircuit,
        count: &mut usize,
        visit: &mut impl FnMut(&[Element]),
    ) {
        if order.len() == n {
            let elements: Vec<Element> =
                order.iter().map(|&i| circuit.elements[i].clone()).collect();
            *count += 1;
            assert!(*count <= 1_000_000, "linear extension explosion");
            visit(&elements);
            return;
        }
        for i in 0..n {
            if used[i] || !predecessors[i].iter().all(|&p| used[p]) {
                continue;
            }
            used[i] = true;
            order.push(i);
            recurse(n, predecessors, used, order, circuit, count, visit);
            order.pop();
            used[i] = false;
        }
    }
    recurse(
        n,
        &predecessors,
        &mut used,
        &mut order,
        circuit,
        &mut count,
        &mut visit,
    );
    count
}
