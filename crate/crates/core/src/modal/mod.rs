//! The bimodal provability logics GL, GLT and GL2.
//!
//! `□` is written `[]` and `△` is written `[.]`; their duals are `<>` and
//! `<.>`. In GLT, `△` is the slower predicate: `△A → □A` is an axiom.
//! GL2 ties the two together by `□A ↔ △△A`.

mod decide;
mod enumerate;
mod formula;
mod model;
mod proof;
mod random;
mod search;
mod tableau;

use thiserror::Error;

pub use crate::text::SyntaxError;
pub use decide::{
    decide, gl2_decide, gl_decide, glt_decide, DecisionOutcome, Evidence, Limits, DEFAULT_MAX_MODEL_SIZE,
    DEFAULT_MAX_PROOF_DEPTH,
};
pub use enumerate::{countermodel_search, prec_r_candidates, SearchOutcome, MAX_VALUATION_BITS};
pub use formula::{
    and, boxed, diamond, iff, implies, nabla, not, or, parse_formula, triangle, var, Formula,
};
pub use model::{KripkeModel, Semantics, TreeFrame, Violation, MAX_WORLDS};
pub use proof::{check_proof, is_tautology, ProofError, ProofLine, ProofObject, Rule, System};
pub use random::random_a_sound_model;
pub use search::search_proof;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModalError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid model: {0}")]
    Violation(Violation),
    #[error("invalid proof file: {0}")]
    InvalidProof(String),
    #[error("semantics mismatch: {0}")]
    SemanticsMismatch(String),
}
