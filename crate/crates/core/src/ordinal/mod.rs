//! Ordinals in `[0, ε₀]` in Cantor normal form.
//!
//! An [`Ordinal`] below ε₀ is a finite sum `ω^a₀·c₀ + … + ω^aₖ·cₖ` with
//! strictly decreasing exponents and positive coefficients. Exponents are
//! themselves ordinals below ε₀, so the representation is a finite tree.
//! ε₀ is kept as a separate constant: it can index the hierarchy, be
//! stepped down through its fundamental sequence and serve as an iteration
//! exponent, but it never takes part in arithmetic.

pub(crate) mod parse;
mod stepdown;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use parse::parse_ordinal;
pub use stepdown::{stepdown_one, stepdown_path, PathResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ε₀ cannot be an operand of ordinal arithmetic")]
    EpsilonZeroOperand,
    #[error("{0} is not a limit ordinal")]
    NotALimit(Ordinal),
    #[error("cannot step down from 0")]
    ZeroInput,
    #[error("tower of height {0} is too tall to build")]
    TowerTooTall(BigUint),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

impl From<crate::text::SyntaxError> for OrdinalError {
    fn from(e: crate::text::SyntaxError) -> Self {
        OrdinalError::Syntax { pos: e.pos, msg: e.msg }
    }
}

/// One `ω^exponent · coefficient` summand of a Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: Ordinal,
    coefficient: BigUint,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Strictly decreasing exponents, coefficients ≥ 1. Empty means zero.
    Cnf(Vec<Term>),
    EpsilonZero,
}

/// A canonical ordinal `≤ ε₀`. Structural equality coincides with equality
/// of the denoted ordinals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordinal(Repr);

/// Borrowed view of an ordinal's shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape<'a> {
    Zero,
    Terms(&'a [Term]),
    EpsilonZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Class {
    Zero,
    Successor(Ordinal),
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal(Repr::Cnf(Vec::new()))
    }

    pub fn one() -> Self {
        Self::finite(1u32)
    }

    pub fn omega() -> Self {
        Ordinal(Repr::Cnf(vec![Term {
            exponent: Self::one(),
            coefficient: BigUint::one(),
        }]))
    }

    pub fn epsilon_zero() -> Self {
        Ordinal(Repr::EpsilonZero)
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            return Self::zero();
        }
        Ordinal(Repr::Cnf(vec![Term {
            exponent: Self::zero(),
            coefficient: n,
        }]))
    }

    /// `ω^exponent · coefficient`; a zero coefficient gives zero.
    pub fn monomial(exponent: Ordinal, coefficient: impl Into<BigUint>) -> Result<Self, OrdinalError> {
        if exponent.is_epsilon_zero() {
            return Err(OrdinalError::EpsilonZeroOperand);
        }
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Ordinal(Repr::Cnf(vec![Term {
            exponent,
            coefficient,
        }])))
    }

    pub fn shape(&self) -> Shape<'_> {
        match &self.0 {
            Repr::EpsilonZero => Shape::EpsilonZero,
            Repr::Cnf(terms) if terms.is_empty() => Shape::Zero,
            Repr::Cnf(terms) => Shape::Terms(terms),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Cnf(t) if t.is_empty())
    }

    pub fn is_epsilon_zero(&self) -> bool {
        matches!(self.0, Repr::EpsilonZero)
    }

    /// The value as a natural number, if the ordinal is finite.
    pub fn as_finite(&self) -> Option<BigUint> {
        match &self.0 {
            Repr::Cnf(terms) => match terms.as_slice() {
                [] => Some(BigUint::zero()),
                [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
                _ => None,
            },
            Repr::EpsilonZero => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    fn terms(&self) -> Result<&[Term], OrdinalError> {
        match &self.0 {
            Repr::Cnf(terms) => Ok(terms),
            Repr::EpsilonZero => Err(OrdinalError::EpsilonZeroOperand),
        }
    }

    /// Ordinal sum `self + rhs`.
    pub fn add(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let a = self.terms()?;
        let b = rhs.terms()?;
        let Some(lead) = b.first() else {
            return Ok(self.clone());
        };
        let mut out: Vec<Term> = Vec::with_capacity(a.len() + b.len());
        let mut rest = b;
        for t in a {
            match t.exponent.cmp(&lead.exponent) {
                Ordering::Greater => out.push(t.clone()),
                Ordering::Equal => {
                    out.push(Term {
                        exponent: t.exponent.clone(),
                        coefficient: &t.coefficient + &lead.coefficient,
                    });
                    rest = &b[1..];
                    break;
                }
                Ordering::Less => break,
            }
        }
        out.extend(rest.iter().cloned());
        Ok(Ordinal(Repr::Cnf(out)))
    }

    /// Ordinal product `self · rhs`.
    pub fn mul(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let a = self.terms()?;
        let b = rhs.terms()?;
        if a.is_empty() || b.is_empty() {
            return Ok(Self::zero());
        }
        let lead = &a[0];
        let mut out = Vec::with_capacity(b.len() + a.len());
        for t in b {
            if t.exponent.is_zero() {
                out.push(Term {
                    exponent: lead.exponent.clone(),
                    coefficient: &lead.coefficient * &t.coefficient,
                });
                out.extend(a[1..].iter().cloned());
            } else {
                out.push(Term {
                    exponent: lead.exponent.add(&t.exponent)?,
                    coefficient: t.coefficient.clone(),
                });
            }
        }
        Ok(Ordinal(Repr::Cnf(out)))
    }

    /// `ω^self`.
    pub fn omega_pow(&self) -> Result<Ordinal, OrdinalError> {
        Self::monomial(self.clone(), 1u32)
    }

    /// `ω^base_n`: `n` nested exponentiations starting from `base`.
    pub fn omega_tower(base: &Ordinal, n: usize) -> Result<Ordinal, OrdinalError> {
        let mut acc = base.clone();
        for _ in 0..n {
            acc = acc.omega_pow()?;
        }
        Ok(acc)
    }

    /// `ω_n = ω^1_n`, with `ω_0 = 1`.
    pub fn omega_n(n: usize) -> Ordinal {
        Self::omega_tower(&Self::one(), n).expect("1 is not ε₀")
    }

    pub fn classify(&self) -> Class {
        match &self.0 {
            Repr::EpsilonZero => Class::Limit,
            Repr::Cnf(terms) => match terms.last() {
                None => Class::Zero,
                Some(last) if last.exponent.is_zero() => {
                    let mut pred = terms.clone();
                    let last = pred.last_mut().unwrap();
                    last.coefficient -= 1u32;
                    if last.coefficient.is_zero() {
                        pred.pop();
                    }
                    Class::Successor(Ordinal(Repr::Cnf(pred)))
                }
                Some(_) => Class::Limit,
            },
        }
    }

    /// The `n`-th element `λ[n]` of the standard fundamental sequence.
    pub fn fund_seq(&self, n: u64) -> Result<Ordinal, OrdinalError> {
        self.fund_seq_big(&BigUint::from(n))
    }

    pub fn fund_seq_big(&self, n: &BigUint) -> Result<Ordinal, OrdinalError> {
        match &self.0 {
            Repr::EpsilonZero => {
                let height = n + 1u32;
                let h = height
                    .to_usize()
                    .filter(|h| *h <= MAX_TOWER_HEIGHT)
                    .ok_or(OrdinalError::TowerTooTall(height))?;
                Ok(Self::omega_n(h))
            }
            Repr::Cnf(terms) => {
                let Some(last) = terms.last() else {
                    return Err(OrdinalError::NotALimit(self.clone()));
                };
                let tail = match last.exponent.classify() {
                    Class::Zero => return Err(OrdinalError::NotALimit(self.clone())),
                    Class::Successor(pred) => Self::monomial(pred, n + 1u32)?,
                    Class::Limit => last.exponent.fund_seq_big(n)?.omega_pow()?,
                };
                let mut head = terms[..terms.len() - 1].to_vec();
                let rest = &last.coefficient - 1u32;
                if !rest.is_zero() {
                    head.push(Term {
                        exponent: last.exponent.clone(),
                        coefficient: rest,
                    });
                }
                Ordinal(Repr::Cnf(head)).add(&tail)
            }
        }
    }

    /// The unique `δ` with `self + δ = rhs`, for `self ≤ rhs`.
    pub(crate) fn left_sub(&self, rhs: &Ordinal) -> Option<Ordinal> {
        if self > rhs {
            return None;
        }
        if rhs.is_epsilon_zero() {
            return Some(if self.is_epsilon_zero() {
                Self::zero()
            } else {
                rhs.clone()
            });
        }
        let a = self.terms().ok()?;
        let b = rhs.terms().ok()?;
        for (i, tb) in b.iter().enumerate() {
            match a.get(i) {
                Some(ta) if ta == tb => continue,
                Some(ta) if ta.exponent == tb.exponent => {
                    let mut out = vec![Term {
                        exponent: tb.exponent.clone(),
                        coefficient: &tb.coefficient - &ta.coefficient,
                    }];
                    out.extend(b[i + 1..].iter().cloned());
                    return Some(Ordinal(Repr::Cnf(out)));
                }
                _ => return Some(Ordinal(Repr::Cnf(b[i..].to_vec()))),
            }
        }
        Some(Self::zero())
    }

    /// Largest exponent appearing at the top level, if any.
    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        match &self.0 {
            Repr::Cnf(terms) => terms.first().map(|t| &t.exponent),
            Repr::EpsilonZero => None,
        }
    }

    /// Splits `self = high + ω·q + m` where every term of `high` has
    /// exponent ≥ 2. Returns `None` for ε₀.
    pub(crate) fn split_omega_tail(&self) -> Option<(Ordinal, BigUint, BigUint)> {
        let terms = self.terms().ok()?;
        let one = Self::one();
        let mut high = Vec::new();
        let mut q = BigUint::zero();
        let mut m = BigUint::zero();
        for t in terms {
            if t.exponent.is_zero() {
                m = t.coefficient.clone();
            } else if t.exponent == one {
                q = t.coefficient.clone();
            } else {
                high.push(t.clone());
            }
        }
        Some((Ordinal(Repr::Cnf(high)), q, m))
    }
}

/// Guard on the height of `ε₀[n] = ω_{n+1}`.
pub const MAX_TOWER_HEIGHT: usize = 1 << 16;

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::EpsilonZero, Repr::EpsilonZero) => Ordering::Equal,
            (Repr::EpsilonZero, _) => Ordering::Greater,
            (_, Repr::EpsilonZero) => Ordering::Less,
            (Repr::Cnf(a), Repr::Cnf(b)) => {
                for (x, y) in a.iter().zip(b) {
                    let ord = x
                        .exponent
                        .cmp(&y.exponent)
                        .then_with(|| x.coefficient.cmp(&y.coefficient));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                a.len().cmp(&b.len())
            }
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order of ordinals; ε₀ is the largest element.
pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::EpsilonZero => f.write_str("e0"),
            Repr::Cnf(terms) if terms.is_empty() => f.write_str("0"),
            Repr::Cnf(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write_term(f, t)?;
                }
                Ok(())
            }
        }
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    if t.exponent.is_zero() {
        return write!(f, "{}", t.coefficient);
    }
    f.write_str("w")?;
    if t.exponent != Ordinal::one() {
        f.write_str("^")?;
        if let Some(n) = t.exponent.as_finite() {
            write!(f, "{n}")?;
        } else if t.exponent == Ordinal::omega() {
            f.write_str("w")?;
        } else {
            write!(f, "({})", t.exponent)?;
        }
    }
    if !t.coefficient.is_one() {
        write!(f, "*{}", t.coefficient)?;
    }
    Ok(())
}
