//! Exhaustive countermodel search over small labeled frames.
//!
//! Candidates are visited in a fixed order: by size, then frame (parent
//! arrays in lexicographic order), then `≺_R` (subsets of the `≺` pairs in
//! binary counting order, pairs sorted), then valuation (counting order,
//! first variable in the lowest bits). The first countermodel in this
//! order is reported, at the least world where the formula fails, so
//! parallel search over frames gives the same answer as a sequential one.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::formula::Formula;
use super::model::{KripkeModel, Semantics, TreeFrame};
use crate::oracles::enumerate_tree_frames;

/// Valuation bits per frame beyond which a size is not searched.
pub const MAX_VALUATION_BITS: usize = 22;

#[derive(Debug, Clone, Copy)]
enum Node {
    Bot,
    Top,
    Var(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Box(usize),
    Triangle(usize),
}

/// A desugared formula flattened into its subformula DAG, children first.
pub(crate) struct Compiled {
    nodes: Vec<Node>,
    vars: Vec<String>,
}

fn necessity(rel: &[u64], inner: u64) -> u64 {
    rel.iter()
        .enumerate()
        .filter(|(_, &m)| m & !inner == 0)
        .fold(0, |acc, (w, _)| acc | 1 << w)
}

impl Compiled {
    pub fn new(f: &Formula) -> Compiled {
        let f = f.desugar();
        let vars = f.variables();
        let subs = f.subformulas();
        let pos: HashMap<&Formula, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let at = |g: &Formula| pos[g];
        let nodes = subs
            .iter()
            .map(|s| match s {
                Formula::Bot => Node::Bot,
                Formula::Top => Node::Top,
                Formula::Var(v) => Node::Var(vars.iter().position(|x| x == v).expect("collected")),
                Formula::Not(a) => Node::Not(at(a)),
                Formula::And(a, b) => Node::And(at(a), at(b)),
                Formula::Or(a, b) => Node::Or(at(a), at(b)),
                Formula::Implies(a, b) => Node::Implies(at(a), at(b)),
                Formula::Iff(a, b) => Node::Iff(at(a), at(b)),
                Formula::Box(a) => Node::Box(at(a)),
                Formula::Triangle(a) => Node::Triangle(at(a)),
                Formula::Diamond(_) | Formula::Nabla(_) => unreachable!("desugared"),
            })
            .collect();
        Compiled { nodes, vars }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Truth sets of all subformulas; the formula itself is last.
    fn eval(&self, val: &[u64], tri: &[u64], bx: &[u64], all: u64, out: &mut Vec<u64>) {
        out.clear();
        for node in &self.nodes {
            let v = match *node {
                Node::Bot => 0,
                Node::Top => all,
                Node::Var(i) => val[i],
                Node::Not(a) => !out[a] & all,
                Node::And(a, b) => out[a] & out[b],
                Node::Or(a, b) => out[a] | out[b],
                Node::Implies(a, b) => (!out[a] | out[b]) & all,
                Node::Iff(a, b) => !(out[a] ^ out[b]) & all,
                Node::Box(a) => necessity(bx, out[a]),
                Node::Triangle(a) => necessity(tri, out[a]),
            };
            out.push(v);
        }
    }

    /// Worlds satisfying `△B → B` for every subformula `B`.
    fn reflexive(&self, tri: &[u64], out: &[u64], all: u64) -> u64 {
        out.iter().fold(all, |acc, &t| acc & (!necessity(tri, t) | t)) & all
    }
}

/// Every `≺_R` on the frame satisfying conditions 2–4, in the fixed order.
pub fn prec_r_candidates(frame: &TreeFrame) -> Vec<Vec<u64>> {
    let succ = frame.successors();
    let n = frame.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| succ[a] >> b & 1 == 1)
        .collect();
    let mut out = Vec::new();
    for subset in 0u64..1 << pairs.len() {
        let mut r = vec![0u64; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if subset >> k & 1 == 1 {
                r[a] |= 1 << b;
            }
        }
        // Condition 3: a ≺ b implies R(b) ⊆ R(a). Condition 4: R(a) is
        // closed upwards under ≺.
        let ok = (0..n).all(|a| {
            let closed_up = (0..n).filter(|&b| r[a] >> b & 1 == 1).all(|b| succ[b] & !r[a] == 0);
            let inherits = (0..n).filter(|&b| succ[a] >> b & 1 == 1).all(|b| r[b] & !r[a] == 0);
            closed_up && inherits
        });
        if ok {
            out.push(r);
        }
    }
    out
}

/// Condition 5 given the reflexive worlds.
fn witnessed(n: usize, succ: &[u64], r: &[u64], refl: u64) -> bool {
    (0..n).all(|x| {
        (0..n).filter(|&y| r[x] >> y & 1 == 1).all(|y| {
            let upto_y = (0..n).filter(|&c| succ[c] >> y & 1 == 1).fold(1u64 << y, |acc, c| acc | 1 << c);
            r[x] & refl & upto_y != 0
        })
    })
}

pub enum SearchOutcome {
    Found { model: KripkeModel, world: usize },
    /// No countermodel up to and including this size.
    Exhausted(usize),
}

fn search_frame(frame: &TreeFrame, c: &Compiled, sem: Semantics) -> Option<(KripkeModel, usize)> {
    let n = frame.size();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let succ = frame.successors();
    let two: Vec<u64> = succ
        .iter()
        .map(|&m| (0..n).filter(|&c| m >> c & 1 == 1).fold(0, |acc, c| acc | succ[c]))
        .collect();
    let relations = match sem {
        Semantics::Glt => prec_r_candidates(frame),
        _ => vec![vec![0u64; n]],
    };
    let v = c.vars().len();
    let mut out = Vec::with_capacity(c.nodes.len());
    let mut val = vec![0u64; v];
    for r in relations {
        let bx: &[u64] = match sem {
            Semantics::Gl => &succ,
            Semantics::Glt => &r,
            Semantics::Gl2 => &two,
        };
        for code in 0u64..1 << (n * v) {
            for (j, slot) in val.iter_mut().enumerate() {
                *slot = code >> (j * n) & all;
            }
            c.eval(&val, &succ, bx, all, &mut out);
            let truth = *out.last().expect("nonempty formula");
            if truth == all {
                continue;
            }
            if sem == Semantics::Glt && !witnessed(n, &succ, &r, c.reflexive(&succ, &out, all)) {
                continue;
            }
            let valuation: BTreeMap<String, u64> = c.vars().iter().cloned().zip(val.iter().copied()).collect();
            let model = KripkeModel::from_frame(frame, r, valuation);
            let world = (!truth & all).trailing_zeros() as usize;
            return Some((model, world));
        }
    }
    None
}

/// The first countermodel with at most `max_size` worlds, in the order
/// described above. Sizes whose valuation space exceeds
/// [`MAX_VALUATION_BITS`] end the search.
pub fn countermodel_search(a: &Formula, sem: Semantics, max_size: usize) -> SearchOutcome {
    countermodel_search_from(a, sem, 1, max_size)
}

pub(crate) fn countermodel_search_from(a: &Formula, sem: Semantics, first: usize, max_size: usize) -> SearchOutcome {
    let c = Compiled::new(a);
    let mut done = first.saturating_sub(1);
    for size in first..=max_size {
        if size * c.vars().len() > MAX_VALUATION_BITS {
            break;
        }
        let frames: Vec<TreeFrame> = enumerate_tree_frames(size).collect();
        let hit = frames.par_iter().find_map_first(|f| search_frame(f, &c, sem));
        if let Some((model, world)) = hit {
            return SearchOutcome::Found { model, world };
        }
        done = size;
    }
    SearchOutcome::Exhausted(done)
}
