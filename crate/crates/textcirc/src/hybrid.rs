//! The full hybrid grammar: texts as ordered sequences of syntax trees,
//! pronominal links between noun occurrences, entity classes, and fusion of
//! linked adjacent sentences into relative-clause constructions.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::grammar::{role_order_leaves, EntityId, Language, NodeLabel, SyntaxTree};

/// Address of one NP (or relative pronoun) leaf inside a text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NpOccurrence {
    pub sentence: usize,
    /// Child indices from the sentence root to the leaf.
    pub path: Vec<usize>,
}

impl NpOccurrence {
    pub fn new(sentence: usize, path: Vec<usize>) -> NpOccurrence {
        NpOccurrence { sentence, path }
    }
}

impl fmt::Display for NpOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "{}:{}", self.sentence, path.join("."))
    }
}

/// Surface realization of an anaphoric mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkSurface {
    Pronoun,
    RelativePronoun,
    RepeatedNoun,
}

impl LinkSurface {
    pub fn tag(self) -> &'static str {
        match self {
            LinkSurface::Pronoun => "pronoun",
            LinkSurface::RelativePronoun => "relative_pronoun",
            LinkSurface::RepeatedNoun => "repeated_noun",
        }
    }

    pub fn from_tag(tag: &str) -> Option<LinkSurface> {
        Some(match tag {
            "pronoun" => LinkSurface::Pronoun,
            "relative_pronoun" => LinkSurface::RelativePronoun,
            "repeated_noun" => LinkSurface::RepeatedNoun,
            _ => return None,
        })
    }
}

/// Coreference edge from an earlier mention to a later one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PronominalLink {
    pub referent: NpOccurrence,
    pub anaphor: NpOccurrence,
    pub surface: LinkSurface,
}

/// A text: ordered sentences plus pronominal links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridText {
    pub language: Language,
    pub sentences: Vec<SyntaxTree>,
    pub links: Vec<PronominalLink>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("occurrence {0} does not address a linkable noun leaf")]
    InvalidOccurrence(NpOccurrence),

    #[error("anaphor {0} is already linked")]
    DoubleLink(NpOccurrence),

    #[error("referent {referent} does not precede anaphor {anaphor}")]
    OrderViolation {
        referent: NpOccurrence,
        anaphor: NpOccurrence,
    },

    #[error("link does not span adjacent sentences ({referent} vs {anaphor})")]
    NonAdjacent {
        referent: NpOccurrence,
        anaphor: NpOccurrence,
    },

    #[error("fusion would break phrase scope: {0}")]
    ScopeEscape(String),
}

impl HybridText {
    pub fn new(language: Language, sentences: Vec<SyntaxTree>) -> HybridText {
        HybridText {
            language,
            sentences,
            links: Vec::new(),
        }
    }

    /// Leaf addressed by `occ`, if the path resolves to one.
    pub fn occurrence(&self, occ: &NpOccurrence) -> Option<&SyntaxTree> {
        let node = self.sentences.get(occ.sentence)?.at_path(&occ.path)?;
        node.is_leaf().then_some(node)
    }

    /// Entity carried by the leaf at `occ`.
    pub fn occurrence_entity(&self, occ: &NpOccurrence) -> Option<EntityId> {
        self.occurrence(occ).and_then(|leaf| leaf.entity_index)
    }
}

fn occurrence_checked<'t>(
    text: &'t HybridText,
    occ: &NpOccurrence,
    allow_rel: bool,
) -> Result<&'t SyntaxTree, LinkError> {
    let leaf = text
        .occurrence(occ)
        .ok_or_else(|| LinkError::InvalidOccurrence(occ.clone()))?;
    let linkable = match leaf.label {
        NodeLabel::Np => true,
        NodeLabel::Rel => allow_rel,
        _ => false,
    };
    if !linkable || leaf.entity_index.is_none() {
        return Err(LinkError::InvalidOccurrence(occ.clone()));
    }
    Ok(leaf)
}

/// Add a pronominal link and unify the entity indices of the two classes
/// (the anaphor's class adopts the referent's index).
pub fn add_link(text: &HybridText, link: PronominalLink) -> Result<HybridText, LinkError> {
    let allow_rel = link.surface == LinkSurface::RelativePronoun;
    let referent = occurrence_checked(text, &link.referent, false)?;
    let anaphor = occurrence_checked(text, &link.anaphor, allow_rel)?;
    if link.referent == link.anaphor {
        return Err(LinkError::InvalidOccurrence(link.anaphor));
    }
    if (link.referent.sentence, &link.referent.path) >= (link.anaphor.sentence, &link.anaphor.path)
    {
        return Err(LinkError::OrderViolation {
            referent: link.referent,
            anaphor: link.anaphor,
        });
    }
    if allow_rel && link.referent.sentence != link.anaphor.sentence {
        // Relative-pronoun links only arise from fusion and stay inside one
        // sentence.
        return Err(LinkError::NonAdjacent {
            referent: link.referent,
            anaphor: link.anaphor,
        });
    }
    if text.links.iter().any(|l| l.anaphor == link.anaphor) {
        return Err(LinkError::DoubleLink(link.anaphor));
    }
    let from = anaphor.entity_index.expect("checked above");
    let to = referent.entity_index.expect("checked above");
    let mut out = text.clone();
    if from != to {
        for sentence in &mut out.sentences {
            renumber_entity(sentence, from, to);
        }
    }
    out.links.push(link);
    Ok(out)
}

fn renumber_entity(node: &mut SyntaxTree, from: EntityId, to: EntityId) {
    if node.entity_index == Some(from) {
        node.entity_index = Some(to);
    }
    for child in &mut node.children {
        renumber_entity(child, from, to);
    }
}

/// One entity: the occurrences that corefer, in first-mention order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityClass {
    pub entity: EntityId,
    /// Word of the first mention, in role-canonical order.
    pub label: String,
    pub occurrences: Vec<NpOccurrence>,
}

/// Partition of NP occurrences into entities, ordered by first mention.
///
/// Mentions within a sentence are enumerated in role-canonical order, so the
/// partition and its order agree between a text and its translation.
pub fn entities(text: &HybridText) -> Vec<EntityClass> {
    let mut classes: Vec<EntityClass> = Vec::new();
    let mut by_entity: BTreeMap<EntityId, usize> = BTreeMap::new();
    for (sentence_idx, sentence) in text.sentences.iter().enumerate() {
        for (path, leaf) in role_order_leaves(sentence, text.language) {
            let Some(entity) = leaf.entity_index else {
                continue;
            };
            if !matches!(leaf.label, NodeLabel::Np | NodeLabel::Rel) {
                continue;
            }
            let occ = NpOccurrence::new(sentence_idx, path);
            match by_entity.get(&entity) {
                Some(&slot) => classes[slot].occurrences.push(occ),
                None => {
                    by_entity.insert(entity, classes.len());
                    classes.push(EntityClass {
                        entity,
                        label: leaf.word.clone().unwrap_or_default(),
                        occurrences: vec![occ],
                    });
                }
            }
        }
    }
    classes
}

/// Fuse the two adjacent sentences joined by `link` into one sentence: the
/// first sentence becomes a relative clause on the linked noun of the second,
/// with the referent position realized as the relative pronoun.
pub fn fuse(text: &HybridText, link: PronominalLink) -> Result<HybridText, LinkError> {
    let language = text.language;
    let referent_occ = link.referent.clone();
    let anaphor_occ = link.anaphor.clone();

    occurrence_checked(text, &referent_occ, false)?;
    let anaphor_leaf = occurrence_checked(text, &anaphor_occ, false)?;
    if anaphor_occ.sentence != referent_occ.sentence + 1 {
        return Err(LinkError::NonAdjacent {
            referent: referent_occ,
            anaphor: anaphor_occ,
        });
    }

    let first = &text.sentences[referent_occ.sentence];
    let second = &text.sentences[anaphor_occ.sentence];

    // The referent must be the subject of the first sentence's top clause:
    // relativization happens in place, without movement.
    let root_rule = first
        .rule(language)
        .ok_or_else(|| LinkError::ScopeEscape("first sentence is not a clause".into()))?;
    if !root_rule.subject_bearing() {
        return Err(LinkError::ScopeEscape(format!(
            "rule {} has no subject to relativize",
            root_rule.name()
        )));
    }
    let subject_idx = root_rule.child_index(language, 0);
    let subject = &first.children[subject_idx];
    let mut expected = vec![subject_idx];
    expected.extend(
        subject
            .core_leaf_path(language)
            .ok_or_else(|| LinkError::ScopeEscape("malformed subject noun phrase".into()))?,
    );
    if referent_occ.path != expected {
        return Err(LinkError::ScopeEscape(
            "referent is not the subject of the preceding sentence".into(),
        ));
    }

    // The relative clause attaches at the subject of the second sentence:
    // the anaphor must be the core noun leaf of that subject. Anywhere else
    // (objects, scoped positions) fusion would reorder the clauses or drag a
    // noun wire across a phrase-scope boundary.
    if !anaphor_leaf.is_leaf() || anaphor_leaf.label != NodeLabel::Np {
        return Err(LinkError::ScopeEscape(
            "anaphor is not a bare noun-phrase leaf".into(),
        ));
    }
    let second_rule = second
        .rule(language)
        .ok_or_else(|| LinkError::ScopeEscape("second sentence is not a clause".into()))?;
    if !second_rule.subject_bearing() {
        return Err(LinkError::ScopeEscape(format!(
            "rule {} has no subject to attach a relative clause to",
            second_rule.name()
        )));
    }
    let anaphor_subject_idx = second_rule.child_index(language, 0);
    let mut expected_anaphor = vec![anaphor_subject_idx];
    expected_anaphor.extend(
        second.children[anaphor_subject_idx]
            .core_leaf_path(language)
            .ok_or_else(|| LinkError::ScopeEscape("malformed subject noun phrase".into()))?,
    );
    if anaphor_occ.path != expected_anaphor {
        return Err(LinkError::ScopeEscape(
            "anaphor is not the subject of the following sentence".into(),
        ));
    }

    let entity = text
        .occurrence_entity(&referent_occ)
        .expect("checked occurrence");

    // Unify entity indices first (also validates ordering and double links),
    // then drop the fused link from the record list; the relative link is
    // re-added below with recomputed paths.
    let unified = add_link_or_existing(text, &link)?;

    let first = unified.sentences[referent_occ.sentence].clone();
    let second = unified.sentences[anaphor_occ.sentence].clone();

    let host_subtree = first.children[subject_idx].clone();
    let mut clause = first;
    clause.children[subject_idx] =
        SyntaxTree::entity_leaf(NodeLabel::Rel, entity, language.relative_word().to_string());
    let host_core: Vec<usize> = {
        let mut p = vec![0];
        p.extend(host_subtree.core_leaf_path(language).expect("checked"));
        p
    };
    let host = SyntaxTree::node(NodeLabel::Np, vec![host_subtree, clause]);

    let mut fused = second;
    *fused
        .at_path_mut(&anaphor_occ.path)
        .expect("anaphor path resolves") = host;

    let fused_idx = referent_occ.sentence;
    let mut sentences = Vec::with_capacity(unified.sentences.len() - 1);
    sentences.extend_from_slice(&unified.sentences[..fused_idx]);
    sentences.push(fused);
    sentences.extend_from_slice(&unified.sentences[fused_idx + 2..]);

    // Occurrence remapping into the fused sentence.
    let map_occ = |occ: &NpOccurrence| -> NpOccurrence {
        if occ.sentence < fused_idx {
            return occ.clone();
        }
        if occ.sentence > fused_idx + 1 {
            return NpOccurrence::new(occ.sentence - 1, occ.path.clone());
        }
        if occ.sentence == fused_idx {
            // Inside the old first sentence.
            let mut path = anaphor_occ.path.clone();
            if occ.path.first() == Some(&subject_idx) {
                path.push(0);
                path.extend_from_slice(&occ.path[1..]);
            } else {
                path.push(1);
                path.extend_from_slice(&occ.path);
            }
            return NpOccurrence::new(fused_idx, path);
        }
        // Inside the old second sentence.
        if occ.path == anaphor_occ.path {
            let mut path = anaphor_occ.path.clone();
            path.extend_from_slice(&host_core);
            return NpOccurrence::new(fused_idx, path);
        }
        NpOccurrence::new(fused_idx, occ.path.clone())
    };

    let mut links: Vec<PronominalLink> = unified
        .links
        .iter()
        .filter(|l| !(l.referent == link.referent && l.anaphor == link.anaphor))
        .map(|l| PronominalLink {
            referent: map_occ(&l.referent),
            anaphor: map_occ(&l.anaphor),
            surface: l.surface,
        })
        .collect();

    let rel_anaphor = {
        let mut p = anaphor_occ.path.clone();
        p.push(1);
        p.push(subject_idx);
        NpOccurrence::new(fused_idx, p)
    };
    let rel_referent = {
        let mut p = anaphor_occ.path.clone();
        p.extend_from_slice(&host_core);
        NpOccurrence::new(fused_idx, p)
    };
    links.push(PronominalLink {
        referent: rel_referent,
        anaphor: rel_anaphor,
        surface: LinkSurface::RelativePronoun,
    });

    Ok(HybridText {
        language,
        sentences,
        links,
    })
}

fn add_link_or_existing(text: &HybridText, link: &PronominalLink) -> Result<HybridText, LinkError> {
    if text
        .links
        .iter()
        .any(|l| l.referent == link.referent && l.anaphor == link.anaphor)
    {
        return Ok(text.clone());
    }
    add_link(text, link.clone())
}
