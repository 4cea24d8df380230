//! Conservative entailment between iterated expressions.
//!
//! Both sides are normalized first. The left stack may then be transformed
//! by four moves, each of which is a provable implication under any context:
//!
//! * split `K^(α+β)` into `K^β K^α` and merge the other way (addition law);
//! * raise an exponent, `K^α ⇒ K^β` for `α ≤ β`;
//! * weaken any kind to `B`.
//!
//! The answer is [`Entailment::Yes`] when these moves reach the right stack
//! exactly. Read as intervals, every left entry then covers a contiguous
//! run of the right stack, possibly starting or ending inside an entry, with
//! exponent at most the covered length and each covered kind equal to its
//! own kind or `B`. [`matches`] searches for such a covering; a block only
//! ever needs to end at an entry boundary or at the smallest cut inside an
//! entry that covers it, because leaving more room to the next block never
//! hurts.

use std::collections::HashMap;

use super::{exp_sum, normalize, IterExpr, OpKind, Power};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entailment {
    Yes,
    /// Not derivable with the rules at hand. This is not a claim of
    /// unprovability.
    Unknown,
}

pub fn entails(e1: &IterExpr, e2: &IterExpr) -> Entailment {
    if e1.atom() != e2.atom() {
        return Entailment::Unknown;
    }
    let lhs = normalize(e1);
    let rhs = normalize(e2);
    let mut memo = HashMap::new();
    let start = Pos {
        entry: 0,
        offset: Ordinal::zero(),
    };
    if matches(lhs.stack(), rhs.stack(), 0, start, &mut memo) {
        Entailment::Yes
    } else {
        Entailment::Unknown
    }
}

/// A point in the right stack: `offset` into entry `entry`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Pos {
    entry: usize,
    offset: Ordinal,
}

type Memo = HashMap<(usize, Pos), bool>;

fn matches(lhs: &[Power], rhs: &[Power], i: usize, at: Pos, memo: &mut Memo) -> bool {
    if i == lhs.len() {
        return at.entry == rhs.len();
    }
    if at.entry == rhs.len() {
        return false;
    }
    if let Some(&known) = memo.get(&(i, at.clone())) {
        return known;
    }
    let found = block_ends(&lhs[i], rhs, &at)
        .into_iter()
        .any(|end| matches(lhs, rhs, i + 1, end, memo));
    memo.insert((i, at), found);
    found
}

/// Candidate end points for a block that covers from `at` with `p`.
fn block_ends(p: &Power, rhs: &[Power], at: &Pos) -> Vec<Pos> {
    let mut ends = Vec::new();
    // `None` once the covered length has passed ε₀.
    let mut covered = Some(Ordinal::zero());
    for (j, q) in rhs.iter().enumerate().skip(at.entry) {
        if q.op != p.op && q.op != OpKind::B {
            break;
        }
        let start = if j == at.entry { at.offset.clone() } else { Ordinal::zero() };
        let avail = start.left_sub(&q.exp).expect("offset lies inside the entry");
        if let Some(c) = covered.as_ref().filter(|c| **c < p.exp) {
            let need = c.left_sub(&p.exp).expect("c < exponent");
            if need < avail {
                let offset = exp_sum(&start, &need).expect("cut lies below the entry's exponent");
                ends.push(Pos { entry: j, offset });
            }
        }
        covered = covered.and_then(|c| exp_sum(&c, &avail));
        if covered.as_ref().is_none_or(|c| *c >= p.exp) {
            ends.push(Pos {
                entry: j + 1,
                offset: Ordinal::zero(),
            });
        }
    }
    ends
}
