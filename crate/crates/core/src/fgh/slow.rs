//! The functions `l` and `r`.
//!
//! ```text
//! l(n) = max({0} ∪ {m | 0 < m < n and F_ω_l(m)(m) ≤ n})
//! r(n) = F_ω_l(n)(n)
//! ```
//!
//! Each membership test is decided by [`compare_F_to`], whose early exit
//! makes the huge candidates cheap to reject. A test that runs out of
//! budget is reported as [`SlowError::Undecided`], never guessed.

use std::collections::HashMap;

use num_bigint::BigUint;
use thiserror::Error;

use super::{compare_F_to, eval_F, EvalBudget, EvalResult, ThresholdResult};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlowError {
    #[error("l({n}) is undecided: the test for m={m} exhausted the budget")]
    Undecided { n: u64, m: u64 },
}

/// An evaluation session holding the memo table for `l`.
#[derive(Debug, Clone)]
pub struct SlowFunctions {
    budget: EvalBudget,
    memo: HashMap<u64, u64>,
}

impl SlowFunctions {
    pub fn new(budget: EvalBudget) -> Self {
        SlowFunctions {
            budget,
            memo: HashMap::new(),
        }
    }

    pub fn l(&mut self, n: u64) -> Result<u64, SlowError> {
        if let Some(&v) = self.memo.get(&n) {
            return Ok(v);
        }
        for k in 0..n {
            self.l(k)?;
        }
        let threshold = BigUint::from(n);
        let mut result = 0;
        // Scan from the top: the first qualifying m is the maximum, but a
        // larger m that cannot be decided blocks the answer.
        for m in (1..n).rev() {
            let index = Ordinal::omega_n(self.memo[&m] as usize);
            match compare_F_to(&index, &BigUint::from(m), &threshold, self.budget) {
                ThresholdResult::LE(_) => {
                    result = m;
                    break;
                }
                ThresholdResult::GT => {}
                ThresholdResult::BudgetExceeded { .. } => return Err(SlowError::Undecided { n, m }),
            }
        }
        self.memo.insert(n, result);
        Ok(result)
    }

    pub fn r(&mut self, n: u64) -> Result<EvalResult, SlowError> {
        let level = self.l(n)?;
        Ok(eval_F(&Ordinal::omega_n(level as usize), &BigUint::from(n), self.budget))
    }
}
