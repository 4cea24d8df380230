//! Formulas of the bimodal language with `□` (`[]`) and `△` (`[.]`).

use std::collections::HashSet;
use std::fmt;

use crate::text::{Cursor, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Top,
    Var(String),
    Not(Bx),
    And(Bx, Bx),
    Or(Bx, Bx),
    Implies(Bx, Bx),
    Iff(Bx, Bx),
    Box(Bx),
    Diamond(Bx),
    Triangle(Bx),
    Nabla(Bx),
}

use Formula::*;

type Bx = std::boxed::Box<Formula>;

pub fn var(name: &str) -> Formula {
    Var(name.to_string())
}

pub fn not(a: Formula) -> Formula {
    Not(Bx::new(a))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    And(Bx::new(a), Bx::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Or(Bx::new(a), Bx::new(b))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Implies(Bx::new(a), Bx::new(b))
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    Iff(Bx::new(a), Bx::new(b))
}

pub fn boxed(a: Formula) -> Formula {
    Box(Bx::new(a))
}

pub fn diamond(a: Formula) -> Formula {
    Diamond(Bx::new(a))
}

pub fn triangle(a: Formula) -> Formula {
    Triangle(Bx::new(a))
}

pub fn nabla(a: Formula) -> Formula {
    Nabla(Bx::new(a))
}

impl Formula {
    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Bot | Top | Var(_) => vec![],
            Not(a) | Box(a) | Diamond(a) | Triangle(a) | Nabla(a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) => vec![a, b],
        }
    }

    pub fn is_modal(&self) -> bool {
        matches!(self, Box(_) | Diamond(_) | Triangle(_) | Nabla(_))
    }

    /// Uses `□` or `◇`.
    pub fn uses_box(&self) -> bool {
        matches!(self, Box(_) | Diamond(_)) || self.children().iter().any(|c| c.uses_box())
    }

    /// Uses `△` or `∇`.
    pub fn uses_triangle(&self) -> bool {
        matches!(self, Triangle(_) | Nabla(_)) || self.children().iter().any(|c| c.uses_triangle())
    }

    pub fn modal_depth(&self) -> usize {
        let inner = self.children().iter().map(|c| c.modal_depth()).max().unwrap_or(0);
        inner + usize::from(self.is_modal())
    }

    /// Variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in self.subformulas() {
            if let Var(name) = f {
                out.push(name);
            }
        }
        out
    }

    /// All subformulas including `self`, children before parents, each
    /// listed once at its first post-order position.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.collect_subformulas(&mut seen, &mut out);
        out
    }

    fn collect_subformulas<'a>(&'a self, seen: &mut HashSet<&'a Formula>, out: &mut Vec<Formula>) {
        for c in self.children() {
            c.collect_subformulas(seen, out);
        }
        if seen.insert(self) {
            out.push(self.clone());
        }
    }

    /// Replaces `◇A` by `¬□¬A` and `∇A` by `¬△¬A` throughout.
    pub fn desugar(&self) -> Formula {
        self.map_children_then(&|f| match f {
            Diamond(a) => not(boxed(not(*a))),
            Nabla(a) => not(triangle(not(*a))),
            other => other,
        })
    }

    /// Swaps `□` and `△` (and their duals).
    pub fn swap_modalities(&self) -> Formula {
        self.map_children_then(&|f| match f {
            Box(a) => Triangle(a),
            Triangle(a) => Box(a),
            Diamond(a) => Nabla(a),
            Nabla(a) => Diamond(a),
            other => other,
        })
    }

    /// Replaces every `□X` by `△△X` (and `◇X` by `∇∇X`).
    pub fn box_as_double_triangle(&self) -> Formula {
        self.map_children_then(&|f| match f {
            Box(a) => triangle(triangle(*a)),
            Diamond(a) => nabla(nabla(*a)),
            other => other,
        })
    }

    /// Rebuilds bottom-up, applying `g` to each node after its children.
    fn map_children_then(&self, g: &dyn Fn(Formula) -> Formula) -> Formula {
        let m = |a: &Formula| Bx::new(a.map_children_then(g));
        let rebuilt = match self {
            Bot => Bot,
            Top => Top,
            Var(v) => Var(v.clone()),
            Not(a) => Not(m(a)),
            And(a, b) => And(m(a), m(b)),
            Or(a, b) => Or(m(a), m(b)),
            Implies(a, b) => Implies(m(a), m(b)),
            Iff(a, b) => Iff(m(a), m(b)),
            Box(a) => Box(m(a)),
            Diamond(a) => Diamond(m(a)),
            Triangle(a) => Triangle(m(a)),
            Nabla(a) => Nabla(m(a)),
        };
        g(rebuilt)
    }

    fn precedence(&self) -> u8 {
        match self {
            Iff(..) => 1,
            Implies(..) => 2,
            Or(..) => 3,
            And(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, a: &Formula, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({a})")
            } else {
                write!(f, "{a}")
            }
        }
        let p = self.precedence();
        match self {
            Bot => f.write_str("false"),
            Top => f.write_str("true"),
            Var(v) => f.write_str(v),
            Not(a) | Box(a) | Diamond(a) | Triangle(a) | Nabla(a) => {
                f.write_str(match self {
                    Not(_) => "~",
                    Box(_) => "[]",
                    Diamond(_) => "<>",
                    Triangle(_) => "[.]",
                    _ => "<.>",
                })?;
                side(f, a, a.precedence() < 5)
            }
            Implies(a, b) => {
                side(f, a, a.precedence() <= p)?;
                f.write_str(" -> ")?;
                side(f, b, b.precedence() < p)
            }
            And(a, b) | Or(a, b) | Iff(a, b) => {
                side(f, a, a.precedence() < p)?;
                f.write_str(match self {
                    And(..) => " & ",
                    Or(..) => " | ",
                    _ => " <-> ",
                })?;
                side(f, b, b.precedence() <= p)
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut cur = Cursor::new(text);
    let f = parse_iff(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(f)
}

fn parse_iff(cur: &mut Cursor<'_>) -> Result<Formula, SyntaxError> {
    let mut acc = parse_imp(cur)?;
    loop {
        cur.skip_ws();
        if !cur.eat("<->") {
            return Ok(acc);
        }
        acc = iff(acc, parse_imp(cur)?);
    }
}

fn parse_imp(cur: &mut Cursor<'_>) -> Result<Formula, SyntaxError> {
    let lhs = parse_or(cur)?;
    cur.skip_ws();
    if cur.eat("->") {
        Ok(implies(lhs, parse_imp(cur)?))
    } else {
        Ok(lhs)
    }
}

fn parse_or(cur: &mut Cursor<'_>) -> Result<Formula, SyntaxError> {
    let mut acc = parse_and(cur)?;
    loop {
        cur.skip_ws();
        if !cur.eat("|") {
            return Ok(acc);
        }
        acc = or(acc, parse_and(cur)?);
    }
}

fn parse_and(cur: &mut Cursor<'_>) -> Result<Formula, SyntaxError> {
    let mut acc = parse_unary(cur)?;
    loop {
        cur.skip_ws();
        if !cur.eat("&") {
            return Ok(acc);
        }
        acc = and(acc, parse_unary(cur)?);
    }
}

type Unary = fn(Formula) -> Formula;

fn parse_unary(cur: &mut Cursor<'_>) -> Result<Formula, SyntaxError> {
    cur.skip_ws();
    // "[." before "[]" and "<." before "<>" so the longer tokens win.
    let ops: [(&str, Unary); 5] = [
        ("~", not),
        ("[.]", triangle),
        ("[]", boxed),
        ("<.>", nabla),
        ("<>", diamond),
    ];
    for (tok, build) in ops {
        if cur.eat(tok) {
            return Ok(build(parse_unary(cur)?));
        }
    }
    parse_atom(cur)
}

fn parse_atom(cur: &mut Cursor<'_>) -> Result<Formula, SyntaxError> {
    cur.skip_ws();
    if cur.eat("(") {
        let inner = parse_iff(cur)?;
        cur.skip_ws();
        if !cur.eat(")") {
            return Err(cur.error("expected `)`"));
        }
        return Ok(inner);
    }
    match cur.ident() {
        Some("true") => Ok(Top),
        Some("false") => Ok(Bot),
        Some(name) => Ok(var(name)),
        None => Err(cur.error("expected a formula")),
    }
}
