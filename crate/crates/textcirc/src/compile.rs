//! Pipeline orchestration: hybrid text to text circuit.

use thiserror::Error;

use crate::circuit::{diagram_to_circuit, CircuitError, TextCircuit};
use crate::diagram::{
    compose, reduce_copula, tree_to_fragment, DashedDirection, DashedLink, DiagramError,
};
use crate::grammar::{EntityId, GeneratorTable, ValidationReport};
use crate::hybrid::{HybridText, NpOccurrence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("sentence {sentence} does not validate: {report}")]
    Validation {
        sentence: usize,
        report: ValidationReport,
    },

    #[error("link occurrence {0} does not resolve to an indexed noun leaf")]
    BadLinkOccurrence(NpOccurrence),

    #[error("link joins distinct entities {referent} and {anaphor}; apply add_link first")]
    UnresolvedLink {
        referent: EntityId,
        anaphor: EntityId,
    },

    #[error(transparent)]
    Diagram(#[from] DiagramError),

    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Compile a hybrid text to its text circuit: validate, convert each sentence
/// to a diagram fragment, turn inter-sentence links into dashed wires,
/// compose, reduce copulas, and convert to a circuit.
pub fn compile_text(text: &HybridText) -> Result<TextCircuit, CompileError> {
    let table = GeneratorTable::bare(text.language);
    let mut fragments = Vec::with_capacity(text.sentences.len());
    for (idx, sentence) in text.sentences.iter().enumerate() {
        let fragment = tree_to_fragment(sentence, &table).map_err(|err| match err {
            DiagramError::ValidationFailure(report) => CompileError::Validation {
                sentence: idx,
                report,
            },
            other => CompileError::Diagram(other),
        })?;
        fragments.push(fragment);
    }

    for link in &text.links {
        let referent = text
            .occurrence_entity(&link.referent)
            .ok_or_else(|| CompileError::BadLinkOccurrence(link.referent.clone()))?;
        let anaphor = text
            .occurrence_entity(&link.anaphor)
            .ok_or_else(|| CompileError::BadLinkOccurrence(link.anaphor.clone()))?;
        if referent != anaphor {
            return Err(CompileError::UnresolvedLink { referent, anaphor });
        }
        if link.referent.sentence == link.anaphor.sentence {
            // Intra-sentence links are already shared wires in one fragment.
            continue;
        }
        fragments[link.referent.sentence].dangling.push(DashedLink {
            entity: referent,
            direction: DashedDirection::Outgoing,
        });
        fragments[link.anaphor.sentence].dangling.push(DashedLink {
            entity: anaphor,
            direction: DashedDirection::Incoming,
        });
    }

    let composed = compose(&fragments)?;
    let reduced = reduce_copula(&composed);
    Ok(diagram_to_circuit(&reduced)?)
}

/// Compile straight to the canonical serialized form.
pub fn compile_to_canonical(text: &HybridText) -> Result<String, CompileError> {
    Ok(compile_text(text)?.canonicalize()?)
}
