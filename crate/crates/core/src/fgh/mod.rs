//! Budgeted evaluation of the fast-growing hierarchy
//!
//! ```text
//! F_0(n)   = n + 1
//! F_α+1(n) = F_α^(n+1)(n)
//! F_λ(n)   = F_λ[n](n)
//! ```
//!
//! Evaluation runs on an explicit stack of pending compositions
//! `(index, remaining applications)` acting on a single current value, so
//! stack depth never depends on the host call stack and every unfolding is
//! counted against [`EvalBudget::max_steps`]. Batches of `F_0` and `F_1`
//! applications are collapsed with `F_0^c(x) = x + c` and
//! `F_1^c(x) = 2^c·(x + 1) − 1`; every other index is unfolded.
//!
//! Every value the machine holds is a lower bound on the final result: each
//! pending frame applies functions with `F(y) > y`. That is what lets
//! [`compare_F_to`] stop with `GT` the moment any intermediate value crosses
//! the threshold.
//!
//! A limit index gets one more shortcut. The `x`-path of any limit `λ`
//! passes through `ω` and then `x+1`, and each step down the path can only
//! lower `F_·(x)`, so `F_λ(x) ≥ F_k(x)` with `k = min(x+1, 3)`. Before the
//! first descent at a given `x` the machine evaluates that finite probe;
//! if the probe already crosses the bit cap or the threshold, so does the
//! real value. Without it, `F_ω^ω(11)` would push millions of frames
//! before any value changed.

mod slow;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ordinal::{Class, Ordinal};

pub use slow::{SlowFunctions, SlowError};

/// 2^29 bits: enough for F₃(2), which has 402 653 213 bits.
pub const DEFAULT_BIT_CAP: u64 = 1 << 29;
pub const DEFAULT_STEP_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FghError {
    #[error("budget caps must be positive (bits={bits}, steps={steps})")]
    InvalidBudget { bits: u64, steps: u64 },
}

/// Caps on intermediate value size and on the number of unfoldings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalBudget {
    max_bit_length: u64,
    max_steps: u64,
}

impl EvalBudget {
    pub fn new(max_bit_length: u64, max_steps: u64) -> Result<Self, FghError> {
        if max_bit_length == 0 || max_steps == 0 {
            return Err(FghError::InvalidBudget {
                bits: max_bit_length,
                steps: max_steps,
            });
        }
        Ok(EvalBudget {
            max_bit_length,
            max_steps,
        })
    }

    pub fn max_bit_length(&self) -> u64 {
        self.max_bit_length
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }
}

impl Default for EvalBudget {
    fn default() -> Self {
        EvalBudget {
            max_bit_length: DEFAULT_BIT_CAP,
            max_steps: DEFAULT_STEP_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalResult {
    Value(BigUint),
    BudgetExceeded { steps_used: u64, largest_bits: u64 },
}

impl EvalResult {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            EvalResult::Value(v) => Some(v),
            EvalResult::BudgetExceeded { .. } => None,
        }
    }

    pub fn into_value(self) -> Option<BigUint> {
        match self {
            EvalResult::Value(v) => Some(v),
            EvalResult::BudgetExceeded { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThresholdResult {
    /// The exact value, known to be at most the threshold.
    LE(BigUint),
    GT,
    BudgetExceeded { steps_used: u64, largest_bits: u64 },
}

enum Halt {
    Exceeded,
    Above,
}

struct Machine<'a> {
    budget: EvalBudget,
    threshold: Option<&'a BigUint>,
    steps: u64,
    largest_bits: u64,
    /// Largest `x` whose finite probe stayed within bounds.
    probed: Option<BigUint>,
}

impl<'a> Machine<'a> {
    fn new(budget: EvalBudget, threshold: Option<&'a BigUint>) -> Self {
        Machine {
            budget,
            threshold,
            steps: 0,
            largest_bits: 0,
            probed: None,
        }
    }

    fn tick(&mut self, cost: u64) -> Result<(), Halt> {
        self.steps = self.steps.saturating_add(cost);
        if self.steps > self.budget.max_steps {
            Err(Halt::Exceeded)
        } else {
            Ok(())
        }
    }

    fn observe(&mut self, x: &BigUint) -> Result<(), Halt> {
        let bits = x.bits();
        self.largest_bits = self.largest_bits.max(bits);
        // A value already past the threshold settles the comparison even
        // when it is too large to keep.
        if self.threshold.is_some_and(|t| x > t) {
            return Err(Halt::Above);
        }
        if bits > self.budget.max_bit_length {
            return Err(Halt::Exceeded);
        }
        Ok(())
    }

    /// `F_1^c(x) = 2^c·(x+1) − 1`, refusing before allocating anything
    /// beyond the caps.
    fn doubling(&mut self, c: &BigUint, x: &BigUint) -> Result<BigUint, Halt> {
        let base = x + 1u32;
        let predicted = c
            .to_u64()
            .and_then(|c| c.checked_add(base.bits()))
            .unwrap_or(u64::MAX);
        // `predicted` overshoots the true bit length by at most one.
        if let Some(t) = self.threshold {
            if predicted > t.bits() + 1 {
                return Err(Halt::Above);
            }
        }
        if predicted > self.budget.max_bit_length {
            self.largest_bits = self.largest_bits.max(predicted);
            return Err(Halt::Exceeded);
        }
        let shift = c.to_u64().expect("checked above");
        Ok((base << shift) - 1u32)
    }

    /// Applies `F_alpha` to `x` a total of `times` times.
    fn run(&mut self, alpha: &Ordinal, times: BigUint, x: BigUint) -> Result<BigUint, Halt> {
        let one = Ordinal::one();
        let mut x = x;
        self.observe(&x)?;
        let mut stack: Vec<(Ordinal, BigUint)> = vec![(alpha.clone(), times)];
        while let Some((index, remaining)) = stack.last_mut() {
            if remaining.is_zero() {
                stack.pop();
                continue;
            }
            self.tick(1)?;
            if index.is_zero() {
                x += &*remaining;
                stack.pop();
            } else if *index == one {
                let c = std::mem::take(remaining);
                x = self.doubling(&c, &x)?;
                stack.pop();
            } else {
                *remaining -= 1u32;
                let next = match index.classify() {
                    Class::Successor(pred) => (pred, &x + 1u32),
                    Class::Limit => {
                        if self.probed.as_ref().is_none_or(|p| x > *p) {
                            let k = x.to_u64().map_or(3, |v| v.saturating_add(1).min(3));
                            self.run(&Ordinal::from(k), BigUint::one(), x.clone())?;
                            self.probed = Some(x.clone());
                        }
                        if index.is_epsilon_zero() {
                            // ε₀[x] is a tower of height x+1.
                            let height = x.to_u64().map(|h| h.saturating_add(1)).unwrap_or(u64::MAX);
                            self.tick(height)?;
                        }
                        let lowered = index.fund_seq_big(&x).map_err(|_| Halt::Exceeded)?;
                        (lowered, BigUint::one())
                    }
                    Class::Zero => unreachable!("zero handled above"),
                };
                stack.push(next);
            }
            self.observe(&x)?;
        }
        Ok(x)
    }

    fn exceeded(&self) -> EvalResult {
        EvalResult::BudgetExceeded {
            steps_used: self.steps.min(self.budget.max_steps),
            largest_bits: self.largest_bits,
        }
    }
}

/// `F_alpha(n)`.
#[allow(non_snake_case)]
pub fn eval_F(alpha: &Ordinal, n: &BigUint, budget: EvalBudget) -> EvalResult {
    eval_F_iter(alpha, &BigUint::one(), n, budget)
}

/// `F_alpha^i(n)`, the `i`-fold composition.
#[allow(non_snake_case)]
pub fn eval_F_iter(alpha: &Ordinal, i: &BigUint, n: &BigUint, budget: EvalBudget) -> EvalResult {
    let mut m = Machine::new(budget, None);
    match m.run(alpha, i.clone(), n.clone()) {
        Ok(v) => EvalResult::Value(v),
        Err(_) => m.exceeded(),
    }
}

/// Decides `F_alpha(n) ≤ threshold`, stopping early once an intermediate
/// value exceeds the threshold.
#[allow(non_snake_case)]
pub fn compare_F_to(alpha: &Ordinal, n: &BigUint, threshold: &BigUint, budget: EvalBudget) -> ThresholdResult {
    let mut m = Machine::new(budget, Some(threshold));
    match m.run(alpha, BigUint::one(), n.clone()) {
        Ok(v) if v <= *threshold => ThresholdResult::LE(v),
        Ok(_) | Err(Halt::Above) => ThresholdResult::GT,
        Err(Halt::Exceeded) => ThresholdResult::BudgetExceeded {
            steps_used: m.steps.min(budget.max_steps),
            largest_bits: m.largest_bits,
        },
    }
}

/// The shifted function `x ↦ F_ε₀(x ∸ z)`.
#[allow(non_snake_case)]
pub fn eval_F_shifted(z: &BigInt, x: &BigUint, budget: EvalBudget) -> EvalResult {
    let arg = BigInt::from(x.clone()) - z;
    let arg = if arg.is_negative() {
        BigUint::zero()
    } else {
        arg.to_biguint().expect("non-negative")
    };
    eval_F(&Ordinal::epsilon_zero(), &arg, budget)
}
