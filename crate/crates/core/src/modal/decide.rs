//! Decision procedures for GL, GLT and GL2.

use super::enumerate::{countermodel_search_from, SearchOutcome};
use super::formula::Formula;
use super::model::{KripkeModel, Semantics};
use super::proof::{ProofObject, System};
use super::search::search_proof;
use super::tableau::Tableau;
use super::ModalError;

pub const DEFAULT_MAX_MODEL_SIZE: usize = 5;
pub const DEFAULT_MAX_PROOF_DEPTH: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_model_size: usize,
    pub max_proof_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_model_size: DEFAULT_MAX_MODEL_SIZE,
            max_proof_depth: DEFAULT_MAX_PROOF_DEPTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Proof(ProofObject),
    /// Validity established without a Hilbert proof; the text says how.
    Certificate(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionOutcome {
    Theorem(Evidence),
    Countermodel { model: KripkeModel, world: usize },
    /// Neither side succeeded within the bounds actually searched.
    Inconclusive { max_model_size: usize, max_proof_depth: usize },
}

impl DecisionOutcome {
    pub fn is_theorem(&self) -> bool {
        matches!(self, DecisionOutcome::Theorem(_))
    }

    pub fn is_countermodel(&self) -> bool {
        matches!(self, DecisionOutcome::Countermodel { .. })
    }
}

const TABLEAU_CERTIFICATE: &str = "the GL tableau closes, so no finite tree-like countermodel exists";

/// Shared tail of the GL and GL2 procedures: the tableau decides; an open
/// tableau is replaced by the first enumerated countermodel when one of at
/// most the tableau's size fits the limits.
fn tableau_decide(a: &Formula, single: &Formula, sem: Semantics, limits: Limits) -> Option<DecisionOutcome> {
    let open = Tableau::new().refute(&single.desugar())?;
    let bound = open.size().min(limits.max_model_size);
    if let SearchOutcome::Found { model, world } = countermodel_search_from(a, sem, 1, bound) {
        return Some(DecisionOutcome::Countermodel { model, world });
    }
    let model = open.into_model(&a.variables());
    Some(DecisionOutcome::Countermodel { model, world: 0 })
}

/// Decides a formula of GL. Either modality may be used, but only one.
pub fn gl_decide(a: &Formula, limits: Limits) -> Result<DecisionOutcome, ModalError> {
    if a.uses_box() && a.uses_triangle() {
        return Err(ModalError::SemanticsMismatch(
            "GL formulas use a single modality".into(),
        ));
    }
    let single = if a.uses_box() { a.swap_modalities() } else { a.clone() };
    Ok(tableau_decide(a, &single, Semantics::Gl, limits)
        .unwrap_or_else(|| DecisionOutcome::Theorem(Evidence::Certificate(TABLEAU_CERTIFICATE.into()))))
}

/// Decides a formula of GL2 through the translation `□X ↦ △△X`, which
/// preserves truth at every world of every tree-like frame.
pub fn gl2_decide(a: &Formula, limits: Limits) -> DecisionOutcome {
    let single = a.box_as_double_triangle();
    tableau_decide(a, &single, Semantics::Gl2, limits).unwrap_or_else(|| {
        match search_proof(a, System::Gl2, limits.max_proof_depth) {
            Some(proof) => DecisionOutcome::Theorem(Evidence::Proof(proof)),
            None => DecisionOutcome::Theorem(Evidence::Certificate(format!(
                "{TABLEAU_CERTIFICATE} (after rewriting □ as △△)"
            ))),
        }
    })
}

/// Interleaves proof search with exhaustive A-sound model search:
/// depth 0, sizes 1 and 2, then one more depth and one more size at a time.
pub fn glt_decide(a: &Formula, limits: Limits) -> DecisionOutcome {
    let mut depth = 0;
    let mut size = 0;
    let mut sizes_open = limits.max_model_size > 0;
    let mut depths_open = true;
    let mut first = true;
    while sizes_open || depths_open {
        if depths_open {
            if let Some(proof) = search_proof(a, System::Glt, depth) {
                return DecisionOutcome::Theorem(Evidence::Proof(proof));
            }
            if depth == limits.max_proof_depth {
                depths_open = false;
            } else {
                depth += 1;
            }
        }
        let steps = if first { 2 } else { 1 };
        first = false;
        for _ in 0..steps {
            if !sizes_open {
                break;
            }
            match countermodel_search_from(a, Semantics::Glt, size + 1, size + 1) {
                SearchOutcome::Found { model, world } => return DecisionOutcome::Countermodel { model, world },
                SearchOutcome::Exhausted(done) if done == size + 1 => size += 1,
                // The valuation space at this size is too large to search.
                SearchOutcome::Exhausted(_) => sizes_open = false,
            }
            if size == limits.max_model_size {
                sizes_open = false;
            }
        }
    }
    DecisionOutcome::Inconclusive {
        max_model_size: size,
        max_proof_depth: limits.max_proof_depth,
    }
}

/// Dispatches on the system.
pub fn decide(system: System, a: &Formula, limits: Limits) -> Result<DecisionOutcome, ModalError> {
    match system {
        System::Gl => gl_decide(a, limits),
        System::Glt => Ok(glt_decide(a, limits)),
        System::Gl2 => Ok(gl2_decide(a, limits)),
    }
}
