//! Slow reference implementations for cross-checking.
//!
//! Nothing here shares code with the evaluators it checks beyond the
//! ordinal type itself: [`oracle_F`] is plain recursion, and the model
//! enumerators filter with [`KripkeModel::validate_model`] rather than
//! building only sound candidates.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::modal::{Formula, KripkeModel, TreeFrame};
use crate::ordinal::{Class, Ordinal};

/// Values above this many bits are refused.
pub const ORACLE_BIT_CAP: u64 = 1 << 30;
/// Recursive calls allowed per oracle evaluation.
pub const ORACLE_CALL_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle hard cap exceeded")]
    HardCapExceeded,
}

struct Calls(u64);

impl Calls {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.0 += 1;
        if self.0 > ORACLE_CALL_CAP {
            Err(OracleError::HardCapExceeded)
        } else {
            Ok(())
        }
    }
}

fn checked(v: BigUint) -> Result<BigUint, OracleError> {
    if v.bits() > ORACLE_BIT_CAP {
        Err(OracleError::HardCapExceeded)
    } else {
        Ok(v)
    }
}

/// `F_alpha(n)` by direct recursion, using `F_1(n) = 2n+1` and
/// `F_2(n) = 2^(n+1)·(n+1) − 1` at the bottom.
#[allow(non_snake_case)]
pub fn oracle_F(alpha: &Ordinal, n: &BigUint) -> Result<BigUint, OracleError> {
    fn go(alpha: &Ordinal, n: BigUint, calls: &mut Calls) -> Result<BigUint, OracleError> {
        calls.tick()?;
        if let Some(k) = alpha.as_finite().and_then(|k| k.to_u32()) {
            match k {
                0 => return Ok(n + 1u32),
                1 => return checked((n << 1) + 1u32),
                2 => {
                    let shift = (&n + 1u32).to_u64().filter(|&s| s < ORACLE_BIT_CAP).ok_or(OracleError::HardCapExceeded)?;
                    return checked(((&n + 1u32) << shift) - 1u32);
                }
                _ => {}
            }
        }
        match alpha.classify() {
            Class::Zero => unreachable!("finite indices handled above"),
            Class::Successor(pred) => {
                let mut x = n.clone();
                let mut i = BigUint::zero();
                while i <= n {
                    x = go(&pred, x, calls)?;
                    i += 1u32;
                }
                Ok(x)
            }
            Class::Limit => {
                let lowered = alpha.fund_seq_big(&n).map_err(|_| OracleError::HardCapExceeded)?;
                go(&lowered, n, calls)
            }
        }
    }
    go(alpha, n.clone(), &mut Calls(0))
}

/// `F_alpha(n)` by unfolding every clause down to `F_0(n) = n + 1`.
/// Only usable for tiny values.
#[allow(non_snake_case)]
pub fn oracle_F_raw(alpha: &Ordinal, n: u64) -> Result<u64, OracleError> {
    fn go(alpha: &Ordinal, n: u64, calls: &mut Calls) -> Result<u64, OracleError> {
        calls.tick()?;
        match alpha.classify() {
            Class::Zero => n.checked_add(1).ok_or(OracleError::HardCapExceeded),
            Class::Successor(pred) => {
                let mut x = n;
                for _ in 0..=n {
                    x = go(&pred, x, calls)?;
                }
                Ok(x)
            }
            Class::Limit => {
                let lowered = alpha.fund_seq(n).map_err(|_| OracleError::HardCapExceeded)?;
                go(&lowered, n, calls)
            }
        }
    }
    go(alpha, n, &mut Calls(0))
}

/// All rooted labeled trees on worlds `0..size` with root 0, as parent
/// arrays `(parent(1), …, parent(size−1))` in lexicographic order.
pub struct FrameIterator {
    size: usize,
    next: Option<Vec<usize>>,
}

pub fn enumerate_tree_frames(size: usize) -> FrameIterator {
    assert!((1..=crate::modal::MAX_WORLDS).contains(&size), "frame size must be between 1 and 64");
    FrameIterator {
        size,
        next: Some(vec![0; size - 1]),
    }
}

impl FrameIterator {
    fn advance(&mut self) {
        let Some(cur) = self.next.as_mut() else { return };
        for k in (0..cur.len()).rev() {
            if cur[k] + 1 < self.size {
                cur[k] += 1;
                return;
            }
            cur[k] = 0;
        }
        self.next = None;
    }
}

impl Iterator for FrameIterator {
    type Item = TreeFrame;

    fn next(&mut self) -> Option<TreeFrame> {
        loop {
            let cur = self.next.clone()?;
            self.advance();
            if let Some(frame) = TreeFrame::from_parents(&cur) {
                return Some(frame);
            }
        }
    }
}

/// Every A-sound model for `a` on `frame`: all `≺_R ⊆ ≺` and all
/// valuations of the first `var_limit` variables of `a`, kept when
/// [`KripkeModel::validate_model`] accepts them. Order: `≺_R` as subsets of
/// the sorted `≺` pairs in counting order, then valuations in counting
/// order with the first variable in the lowest bits.
pub fn enumerate_a_sound_extensions<'a>(
    frame: &'a TreeFrame,
    a: &'a Formula,
    var_limit: usize,
) -> impl Iterator<Item = KripkeModel> + 'a {
    let n = frame.size();
    let succ = frame.successors();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| succ[x] >> y & 1 == 1)
        .collect();
    let vars: Vec<String> = a.variables().into_iter().take(var_limit).collect();
    let val_bits = n * vars.len();
    assert!(val_bits < 64 && pairs.len() < 64, "frame too large to enumerate");
    (0u64..1 << pairs.len()).flat_map(move |subset| {
        let mut r = vec![0u64; n];
        for (k, &(x, y)) in pairs.iter().enumerate() {
            if subset >> k & 1 == 1 {
                r[x] |= 1 << y;
            }
        }
        let vars = vars.clone();
        (0u64..1 << val_bits).filter_map(move |code| {
            let mask = (1u64 << n) - 1;
            let val: BTreeMap<String, u64> = vars
                .iter()
                .enumerate()
                .map(|(j, v)| (v.clone(), code >> (j * n) & mask))
                .collect();
            let m = KripkeModel::from_frame(frame, r.clone(), val);
            m.validate_model(a).is_ok().then_some(m)
        })
    })
}

/// `n^(n²+1)`, the size bound under which A-sound models decide GLT for a
/// formula with `n` subformulas. Far beyond any exhaustive search.
pub fn glt_model_bound(subformula_count: u32) -> BigUint {
    let n = BigUint::from(subformula_count);
    if n.is_zero() {
        return BigUint::one();
    }
    n.pow(subformula_count * subformula_count + 1)
}
