//! The stepdown relation `α →ₙ β`.
//!
//! From `α` the next ordinal is `α[n]` when `α` is a limit and the
//! predecessor otherwise. For fixed `n` the walk is deterministic and
//! strictly decreasing, so it either meets the target, passes below it, or
//! runs out of budget.

use num_bigint::BigUint;

use super::{Class, Ordinal, OrdinalError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathResult {
    /// `path[0]` is the start, `path[steps]` the target.
    Reached { steps: usize, path: Vec<Ordinal> },
    NotOnPath,
    StepBudgetExceeded { partial: Vec<Ordinal> },
}

impl PathResult {
    pub fn is_reached(&self) -> bool {
        matches!(self, PathResult::Reached { .. })
    }
}

/// One stepdown move with parameter `n`.
pub fn stepdown_one(a: &Ordinal, n: &BigUint) -> Result<Ordinal, OrdinalError> {
    match a.classify() {
        Class::Zero => Err(OrdinalError::ZeroInput),
        Class::Successor(pred) => Ok(pred),
        Class::Limit => a.fund_seq_big(n),
    }
}

pub fn stepdown_path(start: &Ordinal, n: &BigUint, target: &Ordinal, step_budget: usize) -> PathResult {
    let mut path = vec![start.clone()];
    let mut current = start.clone();
    loop {
        if current == *target {
            return PathResult::Reached {
                steps: path.len() - 1,
                path,
            };
        }
        // Paths only descend, so once below the target it cannot be met.
        if current < *target {
            return PathResult::NotOnPath;
        }
        if path.len() > step_budget {
            return PathResult::StepBudgetExceeded { partial: path };
        }
        current = match stepdown_one(&current, n) {
            Ok(next) => next,
            // ε₀[n] with an absurd n: treat as out of budget.
            Err(_) => return PathResult::StepBudgetExceeded { partial: path },
        };
        path.push(current.clone());
    }
}
