//! Directed rules and the normal form.
//!
//! Every rule rewrites a single stack entry (the optional context rule looks
//! at one neighbour too), and after each step the stack is re-merged with the
//! addition law:
//!
//! * `R^(2k+m)` becomes `B^k R^m`, since two square-root steps make one
//!   ordinary step.
//! * `S2^(η + ω·q + m)` with `q ≥ 1`, where every term of `η` has exponent
//!   at least 2, becomes `S2^m B^q S2^η`. The addition law splits the power
//!   into `S2^m (S2^ω)^q S2^η` and `S2^ω` is `B`. Zero powers are dropped.
//! * `S1^e0` becomes `B`.
//! * Optionally, `B S1^α` with `α < ε₀` becomes `B`.
//!
//! The rules never fire on each other's output except through merging of
//! `B` powers, and `B` has no rule of its own (the optional rule only
//! deletes), so the order of rule application does not change the result.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{merge_adjacent, IterExpr, OpKind, Power};
use crate::ordinal::Ordinal;

/// Which redex to contract first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Innermost,
    Outermost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NormalizeOptions {
    pub strategy: Strategy,
    /// Enables the context rule `B S1^α → B` for `α < ε₀`.
    pub absorb_s1_under_b: bool,
}

pub fn normalize(e: &IterExpr) -> IterExpr {
    normalize_with(e, NormalizeOptions::default())
}

pub fn normalize_with(e: &IterExpr, opts: NormalizeOptions) -> IterExpr {
    let mut stack = merge_adjacent(e.stack.clone());
    loop {
        let positions: Box<dyn Iterator<Item = usize>> = match opts.strategy {
            Strategy::Innermost => Box::new(0..stack.len()),
            Strategy::Outermost => Box::new((0..stack.len()).rev()),
        };
        let mut fired = false;
        for i in positions {
            if let Some(replacement) = contract(&stack, i, opts) {
                stack.splice(i..=i, replacement);
                stack = merge_adjacent(stack);
                fired = true;
                break;
            }
        }
        if !fired {
            return IterExpr::from_merged(e.atom.clone(), stack);
        }
    }
}

/// The innermost-first replacement for entry `i`, if a rule applies there.
fn contract(stack: &[Power], i: usize, opts: NormalizeOptions) -> Option<Vec<Power>> {
    let p = &stack[i];
    match p.op {
        OpKind::R => {
            let n = p.exp.as_finite().expect("R exponents are finite");
            let two = BigUint::from(2u32);
            let (k, m) = (&n / &two, &n % &two);
            if k.is_zero() {
                return None;
            }
            let mut out = Vec::new();
            if !m.is_zero() {
                out.push(Power::new(OpKind::R, Ordinal::finite(m)));
            }
            out.push(Power::new(OpKind::B, Ordinal::finite(k)));
            Some(out)
        }
        OpKind::S2 => {
            let (high, q, m) = p.exp.split_omega_tail()?;
            if q.is_zero() {
                return None;
            }
            let mut out = Vec::new();
            if !high.is_zero() {
                out.push(Power::new(OpKind::S2, high));
            }
            out.push(Power::new(OpKind::B, Ordinal::finite(q)));
            if !m.is_zero() {
                out.push(Power::new(OpKind::S2, Ordinal::finite(m)));
            }
            Some(out)
        }
        OpKind::S1 if p.exp.is_epsilon_zero() => Some(vec![Power::new(OpKind::B, Ordinal::one())]),
        OpKind::S1 if opts.absorb_s1_under_b => match stack.get(i + 1) {
            Some(outer) if outer.op == OpKind::B => Some(Vec::new()),
            _ => None,
        },
        OpKind::S1 | OpKind::B => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::itercalc::parse_iter;

    fn nf(s: &str) -> String {
        normalize(&parse_iter(s).unwrap()).to_string()
    }

    #[test]
    fn identity_examples() {
        assert_eq!(nf("S2^w p"), "B p");
        assert_eq!(nf("R R p"), "B p");
        assert_eq!(nf("S1^e0 p"), "B p");
        assert_eq!(nf("B^2 B^w p"), "B^(w + 2) p");
    }

    #[test]
    fn square_root_powers() {
        assert_eq!(nf("R^5 p"), "B^2 R p");
        assert_eq!(nf("R p"), "R p");
        assert_eq!(nf("B R^4 B p"), "B^4 p");
        assert_eq!(nf("R^3 S1 R p"), "B R S1 R p");
    }

    #[test]
    fn slow_powers_split_by_addition_law() {
        assert_eq!(nf("S2^(w*3 + 2) p"), "S2^2 B^3 p");
        assert_eq!(nf("S2^(w^2 + w + 1) p"), "S2 B S2^w^2 p");
        assert_eq!(nf("S2^w^2 p"), "S2^w^2 p");
        assert_eq!(nf("S2^w S2 p"), "B p");
        assert_eq!(nf("S2 S2^w p"), "S2 B p");
        assert_eq!(nf("B S2^w B^w p"), "B^(w + 2) p");
        assert_eq!(nf("S1^e0 B^e0 p"), "B B^e0 p");
    }

    #[test]
    fn context_rule_is_opt_in() {
        let e = parse_iter("B S1^w S2 p").unwrap();
        assert_eq!(normalize(&e).to_string(), "B S1^w S2 p");
        let opts = NormalizeOptions {
            absorb_s1_under_b: true,
            ..Default::default()
        };
        assert_eq!(normalize_with(&e, opts).to_string(), "B S2 p");
        let e = parse_iter("B S1 B S1^2 B p").unwrap();
        assert_eq!(normalize_with(&e, opts).to_string(), "B^3 p");
    }

    #[test]
    fn strategies_agree_on_examples() {
        let outer = NormalizeOptions {
            strategy: Strategy::Outermost,
            ..Default::default()
        };
        for s in ["R^3 S2^(w + 1) R^2 p", "S2^w*2 B^e0 S1^e0 p", "S1^e0 S2^w R R p"] {
            let e = parse_iter(s).unwrap();
            assert_eq!(normalize(&e), normalize_with(&e, outer), "{s}");
        }
    }
}
