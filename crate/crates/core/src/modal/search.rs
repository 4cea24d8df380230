//! Bounded Hilbert proof search.
//!
//! The search works with a finite stock of formulas drawn from the goal:
//! its subformulas, implications between arguments of its modalities, and
//! the Löb premises `△X → X`. Axiom instances over this stock are fixed up
//! front. Each round asks a SAT solver which stock formulas follow
//! propositionally from the instances and the theorems found so far, and
//! necessitates them. The goal is tried before every round, so depth `d`
//! allows `d` nested necessitations. Found proofs are assembled from
//! minimal unsatisfiable cores and re-verified by the proof checker.

use std::collections::{HashMap, HashSet};

use varisat::{ExtendFormula, Lit, Solver};

use super::formula::{and, implies, triangle, Formula};
use super::proof::{check_proof, instance, k_instance, ProofLine, ProofObject, Rule, System};

/// Tseitin encoding of boolean skeletons, with modal formulas as atoms.
struct Encoder {
    solver: Solver<'static>,
    lits: HashMap<Formula, Lit>,
    truth: Lit,
}

impl Encoder {
    fn new() -> Self {
        let mut solver = Solver::new();
        let truth = solver.new_lit();
        solver.add_clause(&[truth]);
        Encoder {
            solver,
            lits: HashMap::new(),
            truth,
        }
    }

    fn lit(&mut self, f: &Formula) -> Lit {
        if let Some(&l) = self.lits.get(f) {
            return l;
        }
        let l = match f {
            Formula::Top => self.truth,
            Formula::Bot => !self.truth,
            Formula::Not(a) => !self.lit(a),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let mut x = self.lit(a);
                let y = self.lit(b);
                let z = self.solver.new_lit();
                let s = &mut self.solver;
                match f {
                    Formula::And(..) => {
                        s.add_clause(&[!z, x]);
                        s.add_clause(&[!z, y]);
                        s.add_clause(&[z, !x, !y]);
                    }
                    Formula::Iff(..) => {
                        s.add_clause(&[!z, !x, y]);
                        s.add_clause(&[!z, x, !y]);
                        s.add_clause(&[z, x, y]);
                        s.add_clause(&[z, !x, !y]);
                    }
                    _ => {
                        if matches!(f, Formula::Implies(..)) {
                            x = !x;
                        }
                        s.add_clause(&[!z, x, y]);
                        s.add_clause(&[z, !x]);
                        s.add_clause(&[z, !y]);
                    }
                }
                z
            }
            _ => self.solver.new_lit(),
        };
        self.lits.insert(f.clone(), l);
        l
    }
}

/// How a stock formula became a theorem.
#[derive(Debug, Clone)]
enum Recipe {
    Axiom(Rule),
    Consequence(Vec<Formula>),
    Necessitation(Formula),
}

struct Search {
    enc: Encoder,
    /// Theorems in discovery order with their selector literals.
    premises: Vec<(Formula, Lit)>,
    recipes: HashMap<Formula, Recipe>,
}

impl Search {
    fn new() -> Self {
        Search {
            enc: Encoder::new(),
            premises: Vec::new(),
            recipes: HashMap::new(),
        }
    }

    fn add_theorem(&mut self, f: Formula, recipe: Recipe) {
        if self.recipes.contains_key(&f) {
            return;
        }
        let body = self.enc.lit(&f);
        let selector = self.enc.solver.new_lit();
        self.enc.solver.add_clause(&[!selector, body]);
        self.premises.push((f.clone(), selector));
        self.recipes.insert(f, recipe);
    }

    fn unsat(&mut self, assumptions: &[Lit]) -> bool {
        self.enc.solver.assume(assumptions);
        !self.enc.solver.solve().expect("in-memory SAT solving does not fail")
    }

    /// A minimal set of theorems that propositionally imply `c`.
    fn consequence(&mut self, c: &Formula) -> Option<Vec<Formula>> {
        let goal = !self.enc.lit(c);
        let mut assumptions: Vec<Lit> = self.premises.iter().map(|p| p.1).collect();
        assumptions.push(goal);
        if !self.unsat(&assumptions) {
            return None;
        }
        let core: HashSet<Lit> = self
            .enc
            .solver
            .failed_core()
            .map(|c| c.iter().copied().collect())
            .unwrap_or_default();
        let mut kept: Vec<Lit> = self.premises.iter().map(|p| p.1).filter(|l| core.contains(l)).collect();
        let mut k = 0;
        while k < kept.len() {
            let mut trial: Vec<Lit> = kept.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &l)| l).collect();
            trial.push(goal);
            if self.unsat(&trial) {
                kept.remove(k);
            } else {
                k += 1;
            }
        }
        let kept: HashSet<Lit> = kept.into_iter().collect();
        Some(
            self.premises
                .iter()
                .filter(|p| kept.contains(&p.1))
                .map(|p| p.0.clone())
                .collect(),
        )
    }
}

struct Builder {
    lines: Vec<ProofLine>,
    index: HashMap<Formula, usize>,
}

impl Builder {
    fn push(&mut self, formula: Formula, rule: Rule) -> usize {
        if let Some(&i) = self.index.get(&formula) {
            return i;
        }
        self.lines.push(ProofLine {
            formula: formula.clone(),
            rule,
        });
        self.index.insert(formula, self.lines.len() - 1);
        self.lines.len() - 1
    }

    fn materialize(&mut self, f: &Formula, recipes: &HashMap<Formula, Recipe>) -> usize {
        if let Some(&i) = self.index.get(f) {
            return i;
        }
        match &recipes[f] {
            Recipe::Axiom(rule) => self.push(f.clone(), rule.clone()),
            Recipe::Necessitation(inner) => {
                let i = self.materialize(inner, recipes);
                self.push(f.clone(), Rule::NecTri(i))
            }
            Recipe::Consequence(premises) => self.conclude(premises, f.clone(), recipes),
        }
    }

    /// `p1 → (p2 → … → c)` as a tautology, then one MP per premise.
    fn conclude(&mut self, premises: &[Formula], c: Formula, recipes: &HashMap<Formula, Recipe>) -> usize {
        let idx: Vec<usize> = premises.iter().map(|p| self.materialize(p, recipes)).collect();
        let chain = premises.iter().rev().fold(c.clone(), |acc, p| implies(p.clone(), acc));
        let mut current = self.push(chain.clone(), Rule::Taut);
        let mut rest = chain;
        for &i in &idx {
            let Formula::Implies(_, tail) = rest else { unreachable!() };
            rest = *tail;
            current = self.push(rest.clone(), Rule::MP(i, current));
        }
        current
    }
}

/// The stock of formulas and the axiom instances over it. The stock is a
/// heuristic: it covers the standard derivations (Löb for `□`, transitivity,
/// distribution over conjunctions) without growing beyond cubic size in the
/// number of modal arguments of the goal.
fn stock(goal: &Formula, system: System) -> (Vec<Formula>, Vec<(Formula, Rule)>) {
    let subs = goal.subformulas();
    let mut args: Vec<Formula> = Vec::new();
    for s in &subs {
        if let Formula::Box(a) | Formula::Triangle(a) = s {
            if !args.contains(a) {
                args.push((**a).clone());
            }
        }
    }
    let mut candidates: Vec<Formula> = subs.clone();
    let push = |v: &mut Vec<Formula>, f: Formula| {
        if !v.contains(&f) {
            v.push(f);
        }
    };
    for x in &args {
        for y in &args {
            if x != y {
                push(&mut candidates, implies(x.clone(), y.clone()));
            }
        }
    }
    for x in &subs {
        push(&mut candidates, implies(triangle(x.clone()), x.clone()));
    }
    // Curried pairs, for distributing a box over a conjunction.
    for x in &args {
        for y in &args {
            for z in &args {
                if x != y && y != z && x != z {
                    push(&mut candidates, implies(x.clone(), implies(y.clone(), z.clone())));
                }
            }
        }
    }
    // With W = X ∧ △X, the usual route from Löb's axiom to △X → △△X.
    let mut lob_targets = Vec::new();
    for x in &args {
        let w = and(x.clone(), triangle(x.clone()));
        push(&mut candidates, implies(w.clone(), x.clone()));
        push(&mut candidates, implies(w.clone(), triangle(x.clone())));
        push(&mut candidates, implies(x.clone(), implies(triangle(w.clone()), w.clone())));
        lob_targets.push(w);
    }
    // Löb instances themselves, so they can be necessitated and lifted.
    for x in &subs {
        push(&mut candidates, instance(&Rule::AxLTri, x));
    }

    let mut axioms: Vec<(Formula, Rule)> = Vec::new();
    let mut add = |f: Formula, rule: Rule| {
        if !axioms.iter().any(|(g, _)| *g == f) {
            axioms.push((f, rule));
        }
    };
    for x in subs.iter().chain(&lob_targets) {
        add(instance(&Rule::AxLTri, x), Rule::AxLTri);
        match system {
            System::Glt => {
                for r in [Rule::AxT2, Rule::AxT3, Rule::AxT4] {
                    add(instance(&r, x), r);
                }
            }
            System::Gl2 => add(instance(&Rule::Ax2, x), Rule::Ax2),
            System::Gl => {}
        }
    }
    if system == System::Glt {
        for x in &candidates {
            add(instance(&Rule::AxT1, x), Rule::AxT1);
        }
    }
    for c in &candidates {
        if let Formula::Implies(a, b) = c {
            add(k_instance(&Rule::AxKTri, a, b), Rule::AxKTri);
            if system != System::Gl {
                add(k_instance(&Rule::AxKBox, a, b), Rule::AxKBox);
            }
        }
    }
    (candidates, axioms)
}

/// Searches for a proof of `goal` with at most `max_depth` nested
/// necessitations. In GL the goal may use either modality, but not both.
pub fn search_proof(goal: &Formula, system: System, max_depth: usize) -> Option<ProofObject> {
    if system == System::Gl && goal.uses_box() {
        if goal.uses_triangle() {
            return None;
        }
        let mut proof = search_proof(&goal.swap_modalities(), system, max_depth)?;
        for line in &mut proof.lines {
            line.formula = line.formula.swap_modalities();
        }
        return Some(proof);
    }
    let target = goal.desugar();
    let (candidates, axioms) = stock(&target, system);
    let mut s = Search::new();
    for (f, rule) in axioms {
        s.add_theorem(f, Recipe::Axiom(rule));
    }
    for round in 0..=max_depth {
        if let Some(premises) = s.consequence(&target) {
            let mut b = Builder {
                lines: Vec::new(),
                index: HashMap::new(),
            };
            if s.recipes.contains_key(goal) {
                b.materialize(goal, &s.recipes);
            } else {
                b.conclude(&premises, goal.clone(), &s.recipes);
            }
            let proof = ProofObject { system, lines: b.lines };
            return check_proof(&proof).ok().map(|_| proof);
        }
        if round == max_depth {
            break;
        }
        let mut fresh = Vec::new();
        for c in &candidates {
            let boxed_c = triangle(c.clone());
            if s.recipes.contains_key(&boxed_c) {
                continue;
            }
            if let Some(premises) = s.consequence(c) {
                fresh.push((c.clone(), premises));
            }
        }
        if fresh.is_empty() {
            break;
        }
        for (c, premises) in fresh {
            if !s.recipes.contains_key(&c) {
                s.add_theorem(c.clone(), Recipe::Consequence(premises));
            }
            s.add_theorem(triangle(c.clone()), Recipe::Necessitation(c));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::formula::parse_formula;

    fn prove(system: System, s: &str) -> Option<ProofObject> {
        search_proof(&parse_formula(s).unwrap(), system, 3)
    }

    #[test]
    fn finds_checked_proofs() {
        for s in [
            "[.]p -> []p",
            "[]([]p -> p) -> []p",
            "[](p & q) -> []p",
            "[]p -> [][]p",
            "p -> p",
        ] {
            let proof = prove(System::Glt, s).unwrap_or_else(|| panic!("no proof of {s}"));
            assert_eq!(check_proof(&proof), Ok(()));
            assert_eq!(proof.conclusion(), Some(&parse_formula(s).unwrap()));
        }
    }

    #[test]
    fn gl_proofs_with_box() {
        let proof = prove(System::Gl, "[]([]p -> p) -> []p").unwrap();
        assert_eq!(check_proof(&proof), Ok(()));
        assert!(prove(System::Gl2, "[]p <-> [.][.]p").is_some());
    }

    #[test]
    fn no_proof_of_non_theorems() {
        assert!(prove(System::Glt, "[]p -> [.]p").is_none());
        assert!(prove(System::Glt, "[]false -> [.]false").is_none());
    }
}
