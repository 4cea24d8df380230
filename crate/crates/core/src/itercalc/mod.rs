//! Rewriting of iterated provability operators.
//!
//! An [`IterExpr`] is an atom under a stack of operator powers. The four
//! operator kinds are ordinary provability `B`, the slow predicates `S1`
//! and `S2`, and the square-root predicate `R`. The stack is stored
//! innermost-first while the text form reads outermost-first, so
//! `S2^2 B p` has stack `[(B, 1), (S2, 2)]`.
//!
//! Powers of one operator compose by `K^a K^b φ ↔ K^(b + a) φ`: the inner
//! exponent comes first in the ordinal sum. Two adjacent entries with the
//! same kind are merged on construction, except when the sum would pass ε₀
//! (for instance `B B^e0 p`), in which case they stay apart.

mod entails;
mod normalize;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ordinal::{parse::parse_ord, parse::parse_term, Ordinal, OrdinalError};
use crate::text::{Cursor, SyntaxError};

pub use entails::{entails, Entailment};
pub use normalize::{normalize, normalize_with, NormalizeOptions, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    B,
    S1,
    S2,
    R,
}

impl OpKind {
    pub const ALL: [OpKind; 4] = [OpKind::B, OpKind::S1, OpKind::S2, OpKind::R];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::B => "B",
            OpKind::S1 => "S1",
            OpKind::S2 => "S2",
            OpKind::R => "R",
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OpKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        OpKind::ALL.into_iter().find(|k| k.name() == s).ok_or(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IterError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("exponent of R must be finite, got {0}")]
    InfiniteR(Ordinal),
    #[error("exponent must be at least 1")]
    ZeroExponent,
}

impl From<OrdinalError> for IterError {
    fn from(e: OrdinalError) -> Self {
        match e {
            OrdinalError::Syntax { pos, msg } => IterError::Syntax(SyntaxError { pos, msg }),
            other => IterError::Syntax(SyntaxError {
                pos: 0,
                msg: other.to_string(),
            }),
        }
    }
}

/// One operator power `op^exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Power {
    pub op: OpKind,
    pub exp: Ordinal,
}

impl Power {
    pub fn new(op: OpKind, exp: Ordinal) -> Self {
        Power { op, exp }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IterExpr {
    atom: String,
    stack: Vec<Power>,
}

/// `inner + outer` as an iteration exponent. Unlike plain ordinal addition
/// this absorbs a trailing ε₀ (`α + ε₀ = ε₀` for `α < ε₀`); `None` means the
/// sum lies above ε₀.
pub(crate) fn exp_sum(inner: &Ordinal, outer: &Ordinal) -> Option<Ordinal> {
    if inner.is_epsilon_zero() {
        return None;
    }
    if outer.is_epsilon_zero() {
        return Some(Ordinal::epsilon_zero());
    }
    inner.add(outer).ok()
}

impl IterExpr {
    /// Builds an expression from an innermost-first stack, merging adjacent
    /// powers of the same kind.
    pub fn new(atom: impl Into<String>, stack: Vec<Power>) -> Result<Self, IterError> {
        for p in &stack {
            if p.exp.is_zero() {
                return Err(IterError::ZeroExponent);
            }
            if p.op == OpKind::R && !p.exp.is_finite() {
                return Err(IterError::InfiniteR(p.exp.clone()));
            }
        }
        Ok(IterExpr {
            atom: atom.into(),
            stack: merge_adjacent(stack),
        })
    }

    pub fn atom(&self) -> &str {
        &self.atom
    }

    /// Innermost-first.
    pub fn stack(&self) -> &[Power] {
        &self.stack
    }

    pub(crate) fn from_merged(atom: String, stack: Vec<Power>) -> Self {
        IterExpr { atom, stack }
    }
}

/// Left fold of the addition law over an innermost-first stack.
pub(crate) fn merge_adjacent(stack: Vec<Power>) -> Vec<Power> {
    let mut out: Vec<Power> = Vec::with_capacity(stack.len());
    for p in stack {
        if let Some(last) = out.last_mut() {
            if last.op == p.op {
                if let Some(sum) = exp_sum(&last.exp, &p.exp) {
                    last.exp = sum;
                    continue;
                }
            }
        }
        out.push(p);
    }
    out
}

pub fn parse_iter(text: &str) -> Result<IterExpr, IterError> {
    let mut cur = Cursor::new(text);
    // Collected outermost-first, reversed at the end.
    let mut powers = Vec::new();
    loop {
        cur.skip_ws();
        let start = cur.pos();
        let Some(word) = cur.ident() else {
            return Err(cur.error("expected an operator or an atom"));
        };
        let Ok(op) = word.parse::<OpKind>() else {
            cur.skip_ws();
            if !cur.at_end() {
                return Err(cur.error("unexpected input after the atom"));
            }
            powers.reverse();
            return IterExpr::new(word, powers).map_err(|e| match e {
                IterError::InfiniteR(_) | IterError::ZeroExponent => e,
                IterError::Syntax(s) => IterError::Syntax(SyntaxError { pos: start, ..s }),
            });
        };
        let exp = if cur.eat("^") {
            parse_exponent(&mut cur)?
        } else {
            Ordinal::one()
        };
        if op == OpKind::R && !exp.is_finite() {
            return Err(IterError::InfiniteR(exp));
        }
        powers.push(Power::new(op, exp));
    }
}

fn parse_exponent(cur: &mut Cursor<'_>) -> Result<Ordinal, IterError> {
    if cur.eat("(") {
        let inner = parse_ord(cur)?;
        cur.skip_ws();
        if !cur.eat(")") {
            return Err(cur.error("expected `)`"));
        }
        if inner.is_zero() {
            return Err(IterError::ZeroExponent);
        }
        return Ok(inner);
    }
    if cur.eat_word("e0") {
        return Ok(Ordinal::epsilon_zero());
    }
    Ok(parse_term(cur)?)
}

impl FromStr for IterExpr {
    type Err = IterError;

    fn from_str(s: &str) -> Result<Self, IterError> {
        parse_iter(s)
    }
}

pub fn render_iter(e: &IterExpr) -> String {
    e.to_string()
}

impl fmt::Display for IterExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.stack.iter().rev() {
            f.write_str(p.op.name())?;
            if p.exp != Ordinal::one() {
                let text = p.exp.to_string();
                if text.contains('+') {
                    write!(f, "^({text})")?;
                } else {
                    write!(f, "^{text}")?;
                }
            }
            f.write_str(" ")?;
        }
        f.write_str(&self.atom)
    }
}
