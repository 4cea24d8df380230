//! Executable companion to the theory of slow and square-root provability.
//!
//! * [`ordinal`]: Cantor normal forms below and at ε₀, fundamental
//!   sequences and the stepdown relation.
//! * [`fgh`]: budgeted evaluation of the fast-growing hierarchy and of the
//!   slowly growing functions `l` and `r`.
//! * [`modal`]: the bimodal language with `□` and `△`, Kripke semantics for
//!   GL, GLT and GL2, decision procedures and a Hilbert proof checker.
//! * [`itercalc`]: a rewrite calculus for stacks of iterated provability
//!   operators.
//! * [`oracles`]: slow, independent reference implementations used to
//!   cross-check the above.

pub mod fgh;
pub mod itercalc;
pub mod modal;
pub mod oracles;
pub mod ordinal;
mod text;

pub use text::SyntaxError;
