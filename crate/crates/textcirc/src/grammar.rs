//! Production rules for the restricted English and Urdu fragments, syntax
//! trees, derivations from the start symbol `S`, validation, and surface
//! linearization.
//!
//! Both languages share one rule inventory; four rules differ between the
//! languages in the order of their right-hand sides only (transitive verbs,
//! postpositional adjectives, adpositions on intransitive verbs, and
//! sentential-complement verbs).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// The two supported object languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Language {
    English,
    Urdu,
}

impl Language {
    /// Fixed realization of the copula in this language.
    pub fn copula_word(self) -> &'static str {
        match self {
            Language::English => "is",
            Language::Urdu => "hai",
        }
    }

    /// Fixed realization of the relative pronoun in this language.
    pub fn relative_word(self) -> &'static str {
        match self {
            Language::English => "who",
            Language::Urdu => "jo",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Language::English => write!(f, "en"),
            Language::Urdu => write!(f, "ur"),
        }
    }
}

/// Part-of-speech slots as they appear in the rule inventory.
///
/// `AdjPre`/`AdjPost` and `AdvIv`/`AdvTv` are distinct rule slots but share
/// vocabulary; see [`LexCat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartOfSpeech {
    Np,
    Iv,
    Tv,
    AdjPre,
    AdjPost,
    AdvIv,
    AdvTv,
    AdpIv,
    Scv,
    Cnj,
    Copula,
}

impl PartOfSpeech {
    /// The lexical category supplying vocabulary for this slot.
    pub fn lex_cat(self) -> LexCat {
        match self {
            PartOfSpeech::Np => LexCat::Noun,
            PartOfSpeech::Iv => LexCat::IntransVerb,
            PartOfSpeech::Tv => LexCat::TransVerb,
            PartOfSpeech::AdjPre | PartOfSpeech::AdjPost => LexCat::Adjective,
            PartOfSpeech::AdvIv | PartOfSpeech::AdvTv => LexCat::Adverb,
            PartOfSpeech::AdpIv => LexCat::Adposition,
            PartOfSpeech::Scv => LexCat::ScompVerb,
            PartOfSpeech::Cnj => LexCat::Conjunction,
            PartOfSpeech::Copula => LexCat::Copula,
        }
    }
}

/// Lexical categories used to key vocabularies and the translation lexicon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LexCat {
    Noun,
    IntransVerb,
    TransVerb,
    Adjective,
    Adverb,
    Adposition,
    ScompVerb,
    Conjunction,
    Copula,
}

impl LexCat {
    pub const ALL: [LexCat; 9] = [
        LexCat::Noun,
        LexCat::IntransVerb,
        LexCat::TransVerb,
        LexCat::Adjective,
        LexCat::Adverb,
        LexCat::Adposition,
        LexCat::ScompVerb,
        LexCat::Conjunction,
        LexCat::Copula,
    ];

    /// Tag used in lexicon files.
    pub fn tag(self) -> &'static str {
        match self {
            LexCat::Noun => "NP",
            LexCat::IntransVerb => "IV",
            LexCat::TransVerb => "TV",
            LexCat::Adjective => "ADJ",
            LexCat::Adverb => "ADV",
            LexCat::Adposition => "ADP",
            LexCat::ScompVerb => "SCV",
            LexCat::Conjunction => "CNJ",
            LexCat::Copula => "COPULA",
        }
    }

    pub fn from_tag(tag: &str) -> Option<LexCat> {
        Some(match tag {
            "NP" => LexCat::Noun,
            "IV" => LexCat::IntransVerb,
            "TV" => LexCat::TransVerb,
            "ADJ" => LexCat::Adjective,
            "ADV" => LexCat::Adverb,
            "ADP" => LexCat::Adposition,
            "SCV" => LexCat::ScompVerb,
            "CNJ" => LexCat::Conjunction,
            "COPULA" => LexCat::Copula,
            _ => return None,
        })
    }
}

/// Node labels of syntax trees (nonterminals and preterminal slots).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeLabel {
    S,
    Np,
    Ivp,
    Tvp,
    Adj,
    Adv,
    Adp,
    Scv,
    Cnj,
    Copula,
    /// Relative pronoun introduced by sentence fusion.
    Rel,
}

impl NodeLabel {
    pub fn name(self) -> &'static str {
        match self {
            NodeLabel::S => "S",
            NodeLabel::Np => "NP",
            NodeLabel::Ivp => "IVP",
            NodeLabel::Tvp => "TVP",
            NodeLabel::Adj => "ADJ",
            NodeLabel::Adv => "ADV",
            NodeLabel::Adp => "ADP",
            NodeLabel::Scv => "SCV",
            NodeLabel::Cnj => "CNJ",
            NodeLabel::Copula => "COPULA",
            NodeLabel::Rel => "REL",
        }
    }

    pub fn from_name(name: &str) -> Option<NodeLabel> {
        Some(match name {
            "S" => NodeLabel::S,
            "NP" => NodeLabel::Np,
            "IVP" => NodeLabel::Ivp,
            "TVP" => NodeLabel::Tvp,
            "ADJ" => NodeLabel::Adj,
            "ADV" => NodeLabel::Adv,
            "ADP" => NodeLabel::Adp,
            "SCV" => NodeLabel::Scv,
            "CNJ" => NodeLabel::Cnj,
            "COPULA" => NodeLabel::Copula,
            "REL" => NodeLabel::Rel,
            _ => return None,
        })
    }

    /// Lexical category admissible at a leaf with this label, if any.
    pub fn leaf_cat(self) -> Option<LexCat> {
        Some(match self {
            NodeLabel::Np => LexCat::Noun,
            NodeLabel::Ivp => LexCat::IntransVerb,
            NodeLabel::Tvp => LexCat::TransVerb,
            NodeLabel::Adj => LexCat::Adjective,
            NodeLabel::Adv => LexCat::Adverb,
            NodeLabel::Adp => LexCat::Adposition,
            NodeLabel::Scv => LexCat::ScompVerb,
            NodeLabel::Cnj => LexCat::Conjunction,
            NodeLabel::Copula => LexCat::Copula,
            NodeLabel::S | NodeLabel::Rel => return None,
        })
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Identifiers for the rule inventory.
///
/// The first nine are the shared English/Urdu generator rows; `RelativeClause`
/// is the tree form left behind by fusing pronominally linked sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    IntransVerb,
    TransVerb,
    AdjectivePre,
    AdjectivePost,
    AdverbIv,
    AdverbTv,
    AdpositionIv,
    SentCompVerb,
    Conjunction,
    RelativeClause,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::IntransVerb,
        RuleId::TransVerb,
        RuleId::AdjectivePre,
        RuleId::AdjectivePost,
        RuleId::AdverbIv,
        RuleId::AdverbTv,
        RuleId::AdpositionIv,
        RuleId::SentCompVerb,
        RuleId::Conjunction,
        RuleId::RelativeClause,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::IntransVerb => "Intrans.Verb",
            RuleId::TransVerb => "Trans.Verb",
            RuleId::AdjectivePre => "Adjective(Pre.)",
            RuleId::AdjectivePost => "Adjective(Post.)",
            RuleId::AdverbIv => "Adverb(IV)",
            RuleId::AdverbTv => "Adverb(TV)",
            RuleId::AdpositionIv => "Adposition(IV)",
            RuleId::SentCompVerb => "Sent.Comp.Verb",
            RuleId::Conjunction => "Conjunction",
            RuleId::RelativeClause => "Relative.Clause",
        }
    }

    fn lhs(self) -> NodeLabel {
        match self {
            RuleId::IntransVerb
            | RuleId::TransVerb
            | RuleId::AdjectivePost
            | RuleId::Conjunction => NodeLabel::S,
            RuleId::AdjectivePre | RuleId::RelativeClause => NodeLabel::Np,
            RuleId::AdverbIv | RuleId::AdpositionIv | RuleId::SentCompVerb => NodeLabel::Ivp,
            RuleId::AdverbTv => NodeLabel::Tvp,
        }
    }

    fn english_rhs(self) -> &'static [NodeLabel] {
        use NodeLabel::*;
        match self {
            RuleId::IntransVerb => &[Np, Ivp],
            RuleId::TransVerb => &[Np, Tvp, Np],
            RuleId::AdjectivePre => &[Adj, Np],
            RuleId::AdjectivePost => &[Np, Copula, Adj],
            RuleId::AdverbIv => &[Adv, Ivp],
            RuleId::AdverbTv => &[Adv, Tvp],
            RuleId::AdpositionIv => &[Ivp, Adp, Np],
            RuleId::SentCompVerb => &[Scv, S],
            RuleId::Conjunction => &[S, Cnj, S],
            RuleId::RelativeClause => &[Np, S],
        }
    }

    /// For canonical (English-order) position `i`, the index of the
    /// corresponding child in an Urdu tree.
    fn urdu_positions(self) -> &'static [usize] {
        match self {
            RuleId::IntransVerb => &[0, 1],
            RuleId::TransVerb => &[0, 2, 1],
            RuleId::AdjectivePre => &[0, 1],
            RuleId::AdjectivePost => &[0, 2, 1],
            RuleId::AdverbIv => &[0, 1],
            RuleId::AdverbTv => &[0, 1],
            RuleId::AdpositionIv => &[2, 1, 0],
            RuleId::SentCompVerb => &[1, 0],
            RuleId::Conjunction => &[0, 1, 2],
            RuleId::RelativeClause => &[0, 1],
        }
    }

    fn rhs(self, language: Language) -> Vec<NodeLabel> {
        let canon = self.english_rhs();
        match language {
            Language::English => canon.to_vec(),
            Language::Urdu => {
                let pos = self.urdu_positions();
                let mut out = vec![NodeLabel::S; canon.len()];
                for (i, &label) in canon.iter().enumerate() {
                    out[pos[i]] = label;
                }
                out
            }
        }
    }

    /// Child index holding the role at canonical position `i`.
    pub fn child_index(self, language: Language, canonical_pos: usize) -> usize {
        match language {
            Language::English => canonical_pos,
            Language::Urdu => self.urdu_positions()[canonical_pos],
        }
    }

    pub fn arity(self) -> usize {
        self.english_rhs().len()
    }

    /// Rules whose sentence-like component opens a phrase scope.
    pub fn scope_introducing(self) -> bool {
        matches!(self, RuleId::SentCompVerb | RuleId::Conjunction)
    }

    /// S-rules whose canonical first child is the clause subject.
    pub fn subject_bearing(self) -> bool {
        matches!(
            self,
            RuleId::IntransVerb | RuleId::TransVerb | RuleId::AdjectivePost
        )
    }
}

/// A single production rule of one language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub rule_id: RuleId,
    pub lhs: NodeLabel,
    pub rhs: Vec<NodeLabel>,
    pub language: Language,
    pub scope_introducing: bool,
}

impl Generator {
    fn new(rule_id: RuleId, language: Language) -> Generator {
        Generator {
            rule_id,
            lhs: rule_id.lhs(),
            rhs: rule_id.rhs(language),
            language,
            scope_introducing: rule_id.scope_introducing(),
        }
    }
}

/// Per-category vocabulary of one language.
///
/// Pronouns are noun-slot words tracked separately so that generation can
/// distinguish first mentions from anaphors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    per_cat: BTreeMap<LexCat, BTreeSet<String>>,
    pronouns: BTreeSet<String>,
}

impl Vocabulary {
    pub fn new() -> Vocabulary {
        Vocabulary::default()
    }

    pub fn add(&mut self, cat: LexCat, word: impl Into<String>) {
        self.per_cat.entry(cat).or_default().insert(word.into());
    }

    pub fn add_pronoun(&mut self, word: impl Into<String>) {
        let word = word.into();
        self.pronouns.insert(word.clone());
        self.add(LexCat::Noun, word);
    }

    pub fn admits(&self, cat: LexCat, word: &str) -> bool {
        self.per_cat
            .get(&cat)
            .map(|set| set.contains(word))
            .unwrap_or(false)
    }

    pub fn is_pronoun(&self, word: &str) -> bool {
        self.pronouns.contains(word)
    }

    /// Words of a category, pronouns excluded for nouns.
    pub fn content_words(&self, cat: LexCat) -> Vec<&str> {
        self.per_cat
            .get(&cat)
            .map(|set| {
                set.iter()
                    .filter(|w| cat != LexCat::Noun || !self.pronouns.contains(*w))
                    .map(|w| w.as_str())
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn pronouns(&self) -> Vec<&str> {
        self.pronouns.iter().map(|w| w.as_str()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.per_cat.is_empty()
    }
}

/// The generator set of one language plus its admissible vocabulary.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    pub language: Language,
    pub rules: Vec<Generator>,
    pub vocabulary: Vocabulary,
}

impl GeneratorTable {
    /// Table with the full rule inventory and the given vocabulary.
    pub fn with_vocabulary(language: Language, vocabulary: Vocabulary) -> GeneratorTable {
        let rules = RuleId::ALL
            .iter()
            .map(|&id| Generator::new(id, language))
            .collect();
        GeneratorTable {
            language,
            rules,
            vocabulary,
        }
    }

    /// Table with empty vocabulary; structural validation only.
    pub fn bare(language: Language) -> GeneratorTable {
        GeneratorTable::with_vocabulary(language, Vocabulary::new())
    }

    pub fn generator(&self, rule_id: RuleId) -> &Generator {
        self.rules
            .iter()
            .find(|g| g.rule_id == rule_id)
            .expect("all rule ids are present")
    }

    /// Rule whose rhs pattern matches the given child labels under `lhs`.
    ///
    /// An NP slot at the subject position of a subject-bearing S-rule also
    /// matches a relative pronoun leaf.
    pub fn recognize(&self, lhs: NodeLabel, children: &[NodeLabel]) -> Option<RuleId> {
        recognize_rule(self.language, lhs, children)
    }
}

/// Language-level rule recognition; see [`GeneratorTable::recognize`].
pub fn recognize_rule(
    language: Language,
    lhs: NodeLabel,
    children: &[NodeLabel],
) -> Option<RuleId> {
    'rules: for &id in &RuleId::ALL {
        if id.lhs() != lhs || id.arity() != children.len() {
            continue;
        }
        let rhs = id.rhs(language);
        for (pos, (&want, &got)) in rhs.iter().zip(children.iter()).enumerate() {
            if want == got {
                continue;
            }
            let subject_slot = id.subject_bearing() && pos == 0;
            if want == NodeLabel::Np && got == NodeLabel::Rel && subject_slot {
                continue;
            }
            continue 'rules;
        }
        return Some(id);
    }
    None
}

/// Entity identity of a noun wire; shared indices mean one entity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntityId(pub u32);

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Rooted ordered labelled tree over one language's generators.
///
/// Leaves carry terminal words; NP and REL leaves additionally carry an
/// entity index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SyntaxTree {
    pub label: NodeLabel,
    pub entity_index: Option<EntityId>,
    pub word: Option<String>,
    pub children: Vec<SyntaxTree>,
}

impl SyntaxTree {
    pub fn leaf(label: NodeLabel, word: impl Into<String>) -> SyntaxTree {
        SyntaxTree {
            label,
            entity_index: None,
            word: Some(word.into()),
            children: Vec::new(),
        }
    }

    pub fn entity_leaf(label: NodeLabel, index: EntityId, word: impl Into<String>) -> SyntaxTree {
        SyntaxTree {
            label,
            entity_index: Some(index),
            word: Some(word.into()),
            children: Vec::new(),
        }
    }

    pub fn node(label: NodeLabel, children: Vec<SyntaxTree>) -> SyntaxTree {
        SyntaxTree {
            label,
            entity_index: None,
            word: None,
            children,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn at_path(&self, path: &[usize]) -> Option<&SyntaxTree> {
        let mut node = self;
        for &idx in path {
            node = node.children.get(idx)?;
        }
        Some(node)
    }

    pub fn at_path_mut(&mut self, path: &[usize]) -> Option<&mut SyntaxTree> {
        let mut node = self;
        for &idx in path {
            node = node.children.get_mut(idx)?;
        }
        Some(node)
    }

    /// The rule justifying this node in `language`, if any.
    pub fn rule(&self, language: Language) -> Option<RuleId> {
        if self.is_leaf() {
            return None;
        }
        let child_labels: Vec<NodeLabel> = self.children.iter().map(|c| c.label).collect();
        recognize_rule(language, self.label, &child_labels)
    }

    /// Child holding the role at canonical position `pos` of `rule`.
    pub fn role_child(&self, rule: RuleId, language: Language, pos: usize) -> &SyntaxTree {
        &self.children[rule.child_index(language, pos)]
    }

    /// Entity of the core NP/REL leaf under an NP modifier chain.
    pub fn core_entity(&self, language: Language) -> Option<EntityId> {
        self.core_leaf_path(language)
            .and_then(|p| self.at_path(&p))
            .and_then(|leaf| leaf.entity_index)
    }

    /// Path to the indexed leaf under an NP node, descending through
    /// pre-adjectives and relative clauses.
    pub fn core_leaf_path(&self, language: Language) -> Option<Vec<usize>> {
        let mut path = Vec::new();
        let mut node = self;
        loop {
            if node.is_leaf() {
                return if matches!(node.label, NodeLabel::Np | NodeLabel::Rel) {
                    Some(path)
                } else {
                    None
                };
            }
            let rule = node.rule(language)?;
            let next = match rule {
                RuleId::AdjectivePre => rule.child_index(language, 1),
                RuleId::RelativeClause => 0,
                _ => return None,
            };
            path.push(next);
            node = &node.children[next];
        }
    }

    /// All leaves with their paths, left to right.
    pub fn leaves(&self) -> Vec<(Vec<usize>, &SyntaxTree)> {
        let mut out = Vec::new();
        collect_leaves(self, &mut Vec::new(), &mut out);
        out
    }
}

fn collect_leaves<'t>(
    node: &'t SyntaxTree,
    path: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, &'t SyntaxTree)>,
) {
    if node.is_leaf() {
        out.push((path.clone(), node));
        return;
    }
    for (i, child) in node.children.iter().enumerate() {
        path.push(i);
        collect_leaves(child, path, out);
        path.pop();
    }
}

/// Leaves in role-canonical order: children are visited in the canonical
/// (English) position order of their rule, so the enumeration is invariant
/// under the rhs reorderings that distinguish the two languages.
pub fn role_order_leaves(tree: &SyntaxTree, language: Language) -> Vec<(Vec<usize>, &SyntaxTree)> {
    let mut out = Vec::new();
    collect_role_order(tree, language, &mut Vec::new(), &mut out);
    out
}

fn collect_role_order<'t>(
    node: &'t SyntaxTree,
    language: Language,
    path: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, &'t SyntaxTree)>,
) {
    if node.is_leaf() {
        out.push((path.clone(), node));
        return;
    }
    match node.rule(language) {
        Some(rule) => {
            for pos in 0..rule.arity() {
                let idx = rule.child_index(language, pos);
                path.push(idx);
                collect_role_order(&node.children[idx], language, path, out);
                path.pop();
            }
        }
        // Unrecognized node: fall back to surface order so that the walk
        // still terminates; validation reports the defect separately.
        None => {
            for (i, child) in node.children.iter().enumerate() {
                path.push(i);
                collect_role_order(child, language, path, out);
                path.pop();
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("rule {0:?} cannot be used in a derivation")]
    UnknownRule(RuleId),

    #[error("derivation step {step}: no live nonterminal at position {position}: {reason}")]
    SymbolPositionInvalid {
        step: usize,
        position: usize,
        reason: String,
    },

    #[error("word {word:?} is not admissible for slot {cat:?}")]
    VocabularyViolation { cat: LexCat, word: String },

    #[error("leaf without terminal word at path {path:?}")]
    NonTerminalLeaf { path: Vec<usize> },
}

/// One structural step of a derivation: apply `rule` to the `target`-th live
/// nonterminal (leftmost-first, 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: RuleId,
    pub target: usize,
}

impl DerivationStep {
    pub fn new(rule: RuleId, target: usize) -> DerivationStep {
        DerivationStep { rule, target }
    }
}

/// Replay a derivation from `S`, then fill the remaining preterminal frontier
/// with `lexical_choices` (keyed by final leaf position, left to right).
///
/// Copula slots fill themselves when no explicit choice is given. NP leaves
/// are assigned entity indices 1, 2, ... in surface order.
pub fn derive(
    table: &GeneratorTable,
    steps: &[DerivationStep],
    lexical_choices: &BTreeMap<usize, String>,
) -> Result<SyntaxTree, GrammarError> {
    let mut root = SyntaxTree::node(NodeLabel::S, Vec::new());
    // Root starts as a wordless leaf; live = wordless leaves.
    for (step_no, step) in steps.iter().enumerate() {
        if step.rule == RuleId::RelativeClause {
            return Err(GrammarError::UnknownRule(step.rule));
        }
        let generator = table.generator(step.rule);
        let live = live_leaf_paths(&root);
        let path =
            live.get(step.target)
                .cloned()
                .ok_or_else(|| GrammarError::SymbolPositionInvalid {
                    step: step_no,
                    position: step.target,
                    reason: format!("only {} live symbols", live.len()),
                })?;
        let node = root.at_path_mut(&path).expect("live path resolves");
        if node.label != generator.lhs {
            return Err(GrammarError::SymbolPositionInvalid {
                step: step_no,
                position: step.target,
                reason: format!(
                    "rule {} rewrites {}, position holds {}",
                    step.rule.name(),
                    generator.lhs.name(),
                    node.label.name()
                ),
            });
        }
        node.children = generator
            .rhs
            .iter()
            .map(|&label| SyntaxTree::node(label, Vec::new()))
            .collect();
    }

    // Lexical insertion over the final frontier.
    let frontier = live_leaf_paths(&root);
    let mut next_entity = 1u32;
    for (pos, path) in frontier.iter().enumerate() {
        let language = table.language;
        let node = root.at_path_mut(path).expect("frontier path resolves");
        let label = node.label;
        if label == NodeLabel::S {
            return Err(GrammarError::SymbolPositionInvalid {
                step: steps.len(),
                position: pos,
                reason: "sentence symbol left unexpanded".into(),
            });
        }
        let word = match lexical_choices.get(&pos) {
            Some(word) => word.clone(),
            None if label == NodeLabel::Copula => language.copula_word().to_string(),
            None => {
                return Err(GrammarError::SymbolPositionInvalid {
                    step: steps.len(),
                    position: pos,
                    reason: format!("no lexical choice for {} slot", label.name()),
                })
            }
        };
        let cat = label.leaf_cat().expect("frontier slots are preterminals");
        if cat == LexCat::Copula {
            if word != language.copula_word() {
                return Err(GrammarError::VocabularyViolation { cat, word });
            }
        } else if !table.vocabulary.admits(cat, &word) {
            return Err(GrammarError::VocabularyViolation { cat, word });
        }
        node.word = Some(word);
        if label == NodeLabel::Np {
            node.entity_index = Some(EntityId(next_entity));
            next_entity += 1;
        }
    }
    Ok(root)
}

fn live_leaf_paths(tree: &SyntaxTree) -> Vec<Vec<usize>> {
    tree.leaves()
        .into_iter()
        .filter(|(_, leaf)| leaf.word.is_none())
        .map(|(path, _)| path)
        .collect()
}

/// A single validation failure at a tree position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "at {}: {}", path.join("."), self.message)
    }
}

/// Result of structural validation; empty means the tree is well formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Check that every internal node is justified by a generator of `table`'s
/// language with matching child order, and that leaves are well formed.
pub fn validate(tree: &SyntaxTree, table: &GeneratorTable) -> ValidationReport {
    let mut report = ValidationReport::default();
    if tree.label != NodeLabel::S {
        report.violations.push(Violation {
            path: vec![],
            message: format!("root must be S, found {}", tree.label.name()),
        });
    }
    validate_node(tree, table, &mut Vec::new(), false, &mut report);
    report
}

fn validate_node(
    node: &SyntaxTree,
    table: &GeneratorTable,
    path: &mut Vec<usize>,
    rel_subject_allowed: bool,
    report: &mut ValidationReport,
) {
    let language = table.language;
    if node.is_leaf() {
        validate_leaf(node, language, path, rel_subject_allowed, report);
        return;
    }
    if node.word.is_some() {
        report.violations.push(Violation {
            path: path.clone(),
            message: "internal node carries a terminal word".into(),
        });
    }
    if node.entity_index.is_some() {
        report.violations.push(Violation {
            path: path.clone(),
            message: "internal node carries an entity index".into(),
        });
    }
    let child_labels: Vec<NodeLabel> = node.children.iter().map(|c| c.label).collect();
    let rule = match table.recognize(node.label, &child_labels) {
        Some(rule) => rule,
        None => {
            let labels: Vec<&str> = child_labels.iter().map(|l| l.name()).collect();
            report.violations.push(Violation {
                path: path.clone(),
                message: format!(
                    "no {} generator {} \u{21a6} {}",
                    language,
                    node.label.name(),
                    labels.join(" \u{b7} ")
                ),
            });
            return;
        }
    };
    if rule == RuleId::RelativeClause {
        validate_relative_clause(node, language, path, report);
    }
    for (i, child) in node.children.iter().enumerate() {
        // A relative pronoun may only stand at the subject slot of the
        // clause directly under a relative-clause node.
        let child_is_clause_root = rule == RuleId::RelativeClause && i == 1;
        path.push(i);
        validate_node(child, table, path, child_is_clause_root, report);
        path.pop();
    }
}

fn validate_leaf(
    node: &SyntaxTree,
    language: Language,
    path: &[usize],
    _rel_subject_allowed: bool,
    report: &mut ValidationReport,
) {
    let mut fail = |message: String| {
        report.violations.push(Violation {
            path: path.to_vec(),
            message,
        });
    };
    let word = match &node.word {
        Some(word) => word.as_str(),
        None => {
            fail(format!("unexpanded {} symbol", node.label.name()));
            return;
        }
    };
    match node.label {
        NodeLabel::S => fail("sentence symbol used as a leaf".into()),
        NodeLabel::Np => {
            if node.entity_index.is_none() {
                fail("NP leaf without entity index".into());
            }
        }
        NodeLabel::Rel => {
            if node.entity_index.is_none() {
                fail("relative pronoun without entity index".into());
            }
            if word != language.relative_word() {
                fail(format!(
                    "relative pronoun in {language} must be {:?}, found {word:?}",
                    language.relative_word()
                ));
            }
        }
        NodeLabel::Copula => {
            if word != language.copula_word() {
                fail(format!(
                    "copula in {language} must be {:?}, found {word:?}",
                    language.copula_word()
                ));
            }
            if node.entity_index.is_some() {
                fail("copula leaf carries an entity index".into());
            }
        }
        _ => {
            if node.entity_index.is_some() {
                fail(format!(
                    "{} leaf carries an entity index",
                    node.label.name()
                ));
            }
        }
    }
}

fn validate_relative_clause(
    node: &SyntaxTree,
    language: Language,
    path: &[usize],
    report: &mut ValidationReport,
) {
    let host_entity = node.children[0].core_entity(language);
    let clause = &node.children[1];
    let clause_rule = clause.rule(language);
    let rel_entity = clause_rule
        .filter(|r| r.subject_bearing())
        .map(|r| clause.role_child(r, language, 0))
        .filter(|subject| subject.label == NodeLabel::Rel)
        .and_then(|subject| subject.entity_index);
    match (host_entity, rel_entity) {
        (Some(host), Some(rel)) if host != rel => {
            report.violations.push(Violation {
                path: path.to_vec(),
                message: format!("relative pronoun entity {rel} does not match host entity {host}"),
            });
        }
        (_, None) => {
            report.violations.push(Violation {
                path: path.to_vec(),
                message: "relative clause without a relative-pronoun subject".into(),
            });
        }
        _ => {}
    }
}

/// Left-to-right concatenation of leaf words, single-space separated.
pub fn linearize(tree: &SyntaxTree) -> Result<String, GrammarError> {
    let mut words = Vec::new();
    for (path, leaf) in tree.leaves() {
        match &leaf.word {
            Some(word) => words.push(word.clone()),
            None => return Err(GrammarError::NonTerminalLeaf { path }),
        }
    }
    Ok(words.join(" "))
}
