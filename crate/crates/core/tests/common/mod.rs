//! Helpers shared by the integration tests: a direct-recursion evaluator of
//! the hierarchy that gives up above a threshold, and seeded generators for
//! ordinals, formulas and iterated expressions.
#![allow(dead_code)]

use rand::Rng;
use slowprov::itercalc::{IterExpr, OpKind, Power};
use slowprov::modal::{self, Formula};
use slowprov::ordinal::{Class, Ordinal};

/// `F_alpha(x)` by the defining recursion, or `None` once any intermediate
/// value passes `limit`. Every intermediate value is a lower bound for the
/// result, so `None` means the value is above `limit`.
///
/// Limits get one shortcut. Each `F_β` is inflationary, so
/// `F_(β+1)(x) = F_β^(x+1)(x) ≥ F_β(x)`, and a limit step keeps the value.
/// Hence `F_α(x) ≥ F_γ(x)` for every `γ` on the `x`-path of `α`. For
/// `α ≥ ω` that path runs through `ω` and then `x+1`, so `F_(x+1)(x)`
/// (or `F_3(x)` if smaller) bounds `F_α(x)` from below. Without the bound
/// the recursion would walk the whole path before any value changes.
pub fn f_upto(alpha: &Ordinal, x: u64, limit: u64) -> Option<u64> {
    if x > limit {
        return None;
    }
    match alpha.classify() {
        Class::Zero => Some(x + 1).filter(|v| *v <= limit),
        Class::Successor(pred) => {
            let mut y = x;
            for _ in 0..=x {
                y = f_upto(&pred, y, limit)?;
            }
            Some(y)
        }
        Class::Limit => {
            let floor = Ordinal::from((x + 1).min(3));
            f_upto(&floor, x, limit)?;
            f_upto(&alpha.fund_seq(x).ok()?, x, limit)
        }
    }
}

/// `l` straight from its definition, using [`f_upto`].
pub fn l_direct(n: u64) -> u64 {
    (1..n)
        .filter(|&m| f_upto(&Ordinal::omega_n(l_direct(m) as usize), m, n).is_some())
        .max()
        .unwrap_or(0)
}

pub fn random_ordinal<R: Rng>(rng: &mut R, depth: u32) -> Ordinal {
    if depth == 0 || rng.gen_bool(0.35) {
        return Ordinal::from(rng.gen_range(0..6u64));
    }
    let mut acc = Ordinal::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let exponent = random_ordinal(rng, depth - 1);
        let term = Ordinal::monomial(exponent, rng.gen_range(1..4u32)).expect("exponent below ε₀");
        acc = acc.add(&term).expect("both below ε₀");
    }
    acc
}

/// A random ordinal in `[1, ε₀]`, hitting ε₀ now and then.
pub fn random_exponent<R: Rng>(rng: &mut R, depth: u32) -> Ordinal {
    if rng.gen_bool(0.08) {
        return Ordinal::epsilon_zero();
    }
    loop {
        let o = random_ordinal(rng, depth);
        if !o.is_zero() {
            return o;
        }
    }
}

pub fn random_formula<R: Rng>(rng: &mut R, depth: u32, vars: &[&str]) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::Bot,
            1 => Formula::Top,
            _ => modal::var(vars[rng.gen_range(0..vars.len())]),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, vars);
    match rng.gen_range(0..9) {
        0 => modal::not(sub(rng)),
        1 => modal::and(sub(rng), sub(rng)),
        2 => modal::or(sub(rng), sub(rng)),
        3 => modal::implies(sub(rng), sub(rng)),
        4 => modal::iff(sub(rng), sub(rng)),
        5 => modal::boxed(sub(rng)),
        6 => modal::diamond(sub(rng)),
        7 => modal::triangle(sub(rng)),
        _ => modal::nabla(sub(rng)),
    }
}

/// A random expression over `ops` with exponents of the given depth.
pub fn random_iter<R: Rng>(rng: &mut R, ops: &[OpKind], max_len: usize, depth: u32) -> IterExpr {
    let len = rng.gen_range(0..=max_len);
    let stack = (0..len)
        .map(|_| {
            let op = ops[rng.gen_range(0..ops.len())];
            let exp = if op == OpKind::R {
                Ordinal::from(rng.gen_range(1..7u64))
            } else {
                random_exponent(rng, depth)
            };
            Power::new(op, exp)
        })
        .collect();
    IterExpr::new("p", stack).expect("exponents are positive and R powers finite")
}

/// Which relation interprets `[]`/`<>` in [`Naive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxReading {
    /// `≺_R`, as in A-sound models.
    Restricted,
    /// `≺` itself, so both modalities coincide.
    Same,
    /// `≺∘≺`.
    TwoStep,
}

/// A model as plain relation tables, evaluated by textbook recursion.
pub struct Naive {
    pub n: usize,
    pub prec: Vec<Vec<bool>>,
    pub prec_r: Vec<Vec<bool>>,
    pub val: std::collections::HashMap<String, Vec<bool>>,
}

impl Naive {
    pub fn of(m: &slowprov::modal::KripkeModel, vars: &[String]) -> Naive {
        let n = m.size();
        let table = |f: &dyn Fn(usize, usize) -> bool| -> Vec<Vec<bool>> {
            (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect()
        };
        Naive {
            n,
            prec: table(&|a, b| m.prec(a, b)),
            prec_r: table(&|a, b| m.prec_r(a, b)),
            val: vars
                .iter()
                .map(|v| (v.clone(), (0..n).map(|w| m.valuation(v) >> w & 1 == 1).collect()))
                .collect(),
        }
    }

    fn box_rel(&self, reading: BoxReading, a: usize, b: usize) -> bool {
        match reading {
            BoxReading::Restricted => self.prec_r[a][b],
            BoxReading::Same => self.prec[a][b],
            BoxReading::TwoStep => (0..self.n).any(|c| self.prec[a][c] && self.prec[c][b]),
        }
    }

    pub fn holds(&self, w: usize, f: &Formula, reading: BoxReading) -> bool {
        let worlds = 0..self.n;
        match f {
            Formula::Bot => false,
            Formula::Top => true,
            Formula::Var(v) => self.val.get(v).is_some_and(|bits| bits[w]),
            Formula::Not(a) => !self.holds(w, a, reading),
            Formula::And(a, b) => self.holds(w, a, reading) && self.holds(w, b, reading),
            Formula::Or(a, b) => self.holds(w, a, reading) || self.holds(w, b, reading),
            Formula::Implies(a, b) => !self.holds(w, a, reading) || self.holds(w, b, reading),
            Formula::Iff(a, b) => self.holds(w, a, reading) == self.holds(w, b, reading),
            Formula::Box(a) => worlds.filter(|&v| self.box_rel(reading, w, v)).all(|v| self.holds(v, a, reading)),
            Formula::Diamond(a) => worlds.filter(|&v| self.box_rel(reading, w, v)).any(|v| self.holds(v, a, reading)),
            Formula::Triangle(a) => worlds.filter(|&v| self.prec[w][v]).all(|v| self.holds(v, a, reading)),
            Formula::Nabla(a) => worlds.filter(|&v| self.prec[w][v]).any(|v| self.holds(v, a, reading)),
        }
    }

    /// Conditions 2 to 5 of A-soundness, read off the definition. The frame
    /// itself is assumed tree-like.
    pub fn a_sound(&self, a: &Formula) -> bool {
        let n = self.n;
        let all = |f: &dyn Fn(usize, usize, usize) -> bool| {
            (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| f(x, y, z))))
        };
        let c2 = (0..n).all(|x| (0..n).all(|y| !self.prec_r[x][y] || self.prec[x][y]));
        let c3 = all(&|x, y, z| !(self.prec[x][y] && self.prec_r[y][z]) || self.prec_r[x][z]);
        let c4 = all(&|x, y, z| !(self.prec_r[x][y] && self.prec[y][z]) || self.prec_r[x][z]);
        let subs = a.desugar().subformulas();
        let reflexive = |c: usize| {
            subs.iter()
                .all(|b| self.holds(c, &modal::implies(modal::triangle(b.clone()), b.clone()), BoxReading::Restricted))
        };
        let c5 = (0..n).all(|x| {
            (0..n).all(|y| {
                !self.prec_r[x][y]
                    || (0..n).any(|c| self.prec_r[x][c] && (c == y || self.prec[c][y]) && reflexive(c))
            })
        });
        c2 && c3 && c4 && c5
    }
}
