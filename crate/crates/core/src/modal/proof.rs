//! Hilbert-style proofs and their checker.
//!
//! `△`-necessitation is the only primitive rule besides modus ponens;
//! `□`-necessitation is derivable (necessitate with `△`, then apply T1) and
//! is rejected when used directly.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::formula::{boxed, iff, implies, parse_formula, triangle, Formula};
use super::ModalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum System {
    Gl,
    Glt,
    Gl2,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::Gl => "GL",
            System::Glt => "GLT",
            System::Gl2 => "GL2",
        }
    }

    fn allows(self, rule: &Rule) -> bool {
        use Rule::*;
        match rule {
            Taut | AxKTri | AxLTri | MP(..) | NecTri(_) | NecBox(_) => true,
            AxKBox => self != System::Gl,
            AxT1 | AxT2 | AxT3 | AxT4 => self == System::Glt,
            Ax2 => self == System::Gl2,
        }
    }
}

impl std::str::FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(System::Gl),
            "GLT" => Ok(System::Glt),
            "GL2" => Ok(System::Gl2),
            other => Err(format!("unknown system `{other}`")),
        }
    }
}

/// Justification of a proof line. Line references are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Taut,
    AxKTri,
    AxLTri,
    AxKBox,
    AxT1,
    AxT2,
    AxT3,
    AxT4,
    Ax2,
    /// Premise line, then the implication line.
    MP(usize, usize),
    NecTri(usize),
    /// Accepted by the parser so that the checker can reject it.
    NecBox(usize),
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::Taut => "Taut",
            Rule::AxKTri => "AxK_tri",
            Rule::AxLTri => "AxL_tri",
            Rule::AxKBox => "AxK_box",
            Rule::AxT1 => "AxT1",
            Rule::AxT2 => "AxT2",
            Rule::AxT3 => "AxT3",
            Rule::AxT4 => "AxT4",
            Rule::Ax2 => "Ax2",
            Rule::MP(..) => "MP",
            Rule::NecTri(_) => "Nec_tri",
            Rule::NecBox(_) => "Nec_box",
        }
    }

    fn refs(&self) -> Vec<usize> {
        match *self {
            Rule::MP(i, j) => vec![i, j],
            Rule::NecTri(i) | Rule::NecBox(i) => vec![i],
            _ => vec![],
        }
    }

    fn from_tag(tag: &str, refs: &[usize]) -> Result<Rule, String> {
        let zero_based = |k: usize| -> Result<usize, String> {
            refs.get(k)
                .and_then(|r| r.checked_sub(1))
                .ok_or_else(|| format!("`{tag}` needs {} positive line reference(s)", k + 1))
        };
        let rule = match tag {
            "Taut" => Rule::Taut,
            "AxK_tri" => Rule::AxKTri,
            "AxL_tri" => Rule::AxLTri,
            "AxK_box" => Rule::AxKBox,
            "AxT1" => Rule::AxT1,
            "AxT2" => Rule::AxT2,
            "AxT3" => Rule::AxT3,
            "AxT4" => Rule::AxT4,
            "Ax2" => Rule::Ax2,
            "MP" => Rule::MP(zero_based(0)?, zero_based(1)?),
            "Nec_tri" => Rule::NecTri(zero_based(0)?),
            "Nec_box" => Rule::NecBox(zero_based(0)?),
            other => return Err(format!("unknown rule `{other}`")),
        };
        let expected = rule.refs().len();
        if refs.len() != expected {
            return Err(format!("`{tag}` takes {expected} line reference(s)"));
        }
        Ok(rule)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofObject {
    pub system: System,
    pub lines: Vec<ProofLine>,
}

/// The first failing line (1-based) and why it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofError {
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ERROR line={} {}", self.line, self.reason)
    }
}

#[derive(Serialize, Deserialize)]
struct LineFile {
    formula: String,
    rule: String,
    #[serde(default)]
    refs: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ProofFile {
    system: String,
    lines: Vec<LineFile>,
}

impl ProofObject {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn from_json(text: &str) -> Result<ProofObject, ModalError> {
        let file: ProofFile = serde_json::from_str(text).map_err(|e| ModalError::InvalidProof(e.to_string()))?;
        let system = file.system.parse().map_err(ModalError::InvalidProof)?;
        let mut lines = Vec::new();
        for (k, l) in file.lines.iter().enumerate() {
            let at = |msg: String| ModalError::InvalidProof(format!("line {}: {msg}", k + 1));
            let formula = parse_formula(&l.formula).map_err(|e| at(e.to_string()))?;
            let rule = Rule::from_tag(&l.rule, &l.refs).map_err(at)?;
            lines.push(ProofLine { formula, rule });
        }
        Ok(ProofObject { system, lines })
    }

    pub fn to_json(&self) -> String {
        let file = ProofFile {
            system: self.system.name().to_string(),
            lines: self
                .lines
                .iter()
                .map(|l| LineFile {
                    formula: l.formula.to_string(),
                    rule: l.rule.tag().to_string(),
                    refs: l.rule.refs().iter().map(|r| r + 1).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("proof serializes")
    }
}

impl fmt::Display for ProofObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.lines.iter().enumerate() {
            let refs: Vec<String> = l.rule.refs().iter().map(|r| (r + 1).to_string()).collect();
            write!(f, "{:>3}. {}    [{}", k + 1, l.formula, l.rule.tag())?;
            if !refs.is_empty() {
                write!(f, " {}", refs.join(","))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Whether `f` matches the schema named by `rule`, reading every modality
/// literally.
fn matches_schema(rule: &Rule, f: &Formula) -> bool {
    use Formula as F;
    let F::Implies(lhs, rhs) = f else {
        // Ax2 is the only schema that is not an implication.
        if let (Rule::Ax2, F::Iff(l, r)) = (rule, f) {
            if let F::Box(a) = &**l {
                return **r == triangle(triangle((**a).clone()));
            }
        }
        return false;
    };
    let (lhs, rhs) = (&**lhs, &**rhs);
    match rule {
        Rule::AxKTri | Rule::AxKBox => {
            let (inner, wrap): (&Formula, fn(Formula) -> Formula) = match (rule, lhs) {
                (Rule::AxKTri, F::Triangle(i)) => (i, triangle),
                (Rule::AxKBox, F::Box(i)) => (i, boxed),
                _ => return false,
            };
            match inner {
                F::Implies(a, b) => *rhs == implies(wrap((**a).clone()), wrap((**b).clone())),
                _ => false,
            }
        }
        Rule::AxLTri => match rhs {
            F::Triangle(a) => *lhs == triangle(implies(rhs.clone(), (**a).clone())),
            _ => false,
        },
        Rule::AxT1 => match (lhs, rhs) {
            (F::Triangle(a), F::Box(b)) => a == b,
            _ => false,
        },
        Rule::AxT2 => match lhs {
            F::Box(_) => *rhs == triangle(lhs.clone()),
            _ => false,
        },
        Rule::AxT3 => match lhs {
            F::Box(a) => *rhs == boxed(triangle((**a).clone())),
            _ => false,
        },
        Rule::AxT4 => match rhs {
            F::Box(a) => *lhs == boxed(triangle((**a).clone())),
            _ => false,
        },
        _ => false,
    }
}

/// Kleene evaluation of the boolean skeleton under a partial assignment
/// of the modal and propositional atoms.
fn partial_value(f: &Formula, assignment: &HashMap<&Formula, bool>) -> Option<bool> {
    use Formula as F;
    let v = |g: &Formula| partial_value(g, assignment);
    match f {
        F::Top => Some(true),
        F::Bot => Some(false),
        F::Not(a) => v(a).map(|x| !x),
        F::And(a, b) => match (v(a), v(b)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        },
        F::Or(a, b) => match (v(a), v(b)) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        },
        F::Implies(a, b) => match (v(a), v(b)) {
            (Some(false), _) | (_, Some(true)) => Some(true),
            (Some(true), Some(false)) => Some(false),
            _ => None,
        },
        F::Iff(a, b) => Some(v(a)? == v(b)?),
        atom => assignment.get(atom).copied(),
    }
}

fn boolean_atoms<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::Top | Formula::Bot => {}
        Formula::Not(_) | Formula::And(..) | Formula::Or(..) | Formula::Implies(..) | Formula::Iff(..) => {
            for c in f.children() {
                boolean_atoms(c, out);
            }
        }
        atom => {
            if !out.contains(&atom) {
                out.push(atom);
            }
        }
    }
}

/// Propositional tautology check with modal subformulas as atoms
/// (after rewriting `◇`, `∇` into their duals).
pub fn is_tautology(f: &Formula) -> bool {
    let f = f.desugar();
    let mut atoms = Vec::new();
    boolean_atoms(&f, &mut atoms);
    fn split<'a>(f: &Formula, atoms: &[&'a Formula], k: usize, asg: &mut HashMap<&'a Formula, bool>) -> bool {
        match partial_value(f, asg) {
            Some(b) => b,
            None => {
                let atom = atoms[k];
                [true, false].into_iter().all(|b| {
                    asg.insert(atom, b);
                    let ok = split(f, atoms, k + 1, asg);
                    asg.remove(atom);
                    ok
                })
            }
        }
    }
    split(&f, &atoms, 0, &mut HashMap::new())
}

/// Checks every line and reports the first failure.
pub fn check_proof(p: &ProofObject) -> Result<(), ProofError> {
    // GL proofs have one modality; read `□` proofs as `△` proofs.
    let uses_box = p.lines.iter().any(|l| l.formula.uses_box());
    let uses_tri = p.lines.iter().any(|l| l.formula.uses_triangle());
    let normalized: Vec<Formula>;
    let formulas: Vec<&Formula> = if p.system == System::Gl && uses_box {
        if uses_tri {
            let line = p.lines.iter().position(|l| l.formula.uses_triangle()).unwrap_or(0) + 1;
            return Err(ProofError {
                line,
                reason: "GL proofs must use a single modality".into(),
            });
        }
        normalized = p.lines.iter().map(|l| l.formula.swap_modalities()).collect();
        normalized.iter().collect()
    } else {
        p.lines.iter().map(|l| &l.formula).collect()
    };
    for (k, line) in p.lines.iter().enumerate() {
        let fail = |reason: &str| {
            Err(ProofError {
                line: k + 1,
                reason: reason.to_string(),
            })
        };
        let f = formulas[k];
        if line.rule.refs().iter().any(|&r| r >= k) {
            return fail("reference to a later line");
        }
        if let Rule::NecBox(_) = line.rule {
            return fail("rule not primitive");
        }
        if !p.system.allows(&line.rule) {
            return fail(&format!("{} is not an axiom of {}", line.rule.tag(), p.system.name()));
        }
        match line.rule {
            Rule::Taut => {
                if !is_tautology(f) {
                    return fail("not a tautology");
                }
            }
            Rule::MP(i, j) => {
                let ok = |prem: &Formula, imp: &Formula| *imp == implies(prem.clone(), f.clone());
                if !(ok(formulas[i], formulas[j]) || ok(formulas[j], formulas[i])) {
                    return fail("MP mismatch");
                }
            }
            Rule::NecTri(i) => {
                if *f != triangle(formulas[i].clone()) {
                    return fail("Nec_tri mismatch");
                }
            }
            Rule::NecBox(_) => unreachable!(),
            ref axiom => {
                if !matches_schema(axiom, f) {
                    return fail(&format!("not an instance of {}", axiom.tag()));
                }
            }
        }
    }
    Ok(())
}

/// Instance of a one-argument schema.
pub(crate) fn instance(rule: &Rule, a: &Formula) -> Formula {
    let a = a.clone();
    match rule {
        Rule::AxLTri => implies(triangle(implies(triangle(a.clone()), a.clone())), triangle(a)),
        Rule::AxT1 => implies(triangle(a.clone()), boxed(a)),
        Rule::AxT2 => implies(boxed(a.clone()), triangle(boxed(a))),
        Rule::AxT3 => implies(boxed(a.clone()), boxed(triangle(a))),
        Rule::AxT4 => implies(boxed(triangle(a.clone())), boxed(a)),
        Rule::Ax2 => iff(boxed(a.clone()), triangle(triangle(a))),
        other => panic!("{} is not a one-argument schema", other.tag()),
    }
}

/// Instance of a distribution schema.
pub(crate) fn k_instance(rule: &Rule, a: &Formula, b: &Formula) -> Formula {
    let wrap = match rule {
        Rule::AxKTri => triangle,
        Rule::AxKBox => boxed,
        other => panic!("{} is not a distribution schema", other.tag()),
    };
    implies(
        wrap(implies(a.clone(), b.clone())),
        implies(wrap(a.clone()), wrap(b.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn line(s: &str, rule: Rule) -> ProofLine {
        ProofLine { formula: f(s), rule }
    }

    #[test]
    fn three_line_derivation() {
        let p = ProofObject {
            system: System::Glt,
            lines: vec![
                line("[.]p -> []p", Rule::AxT1),
                line("[](p -> q) -> []p -> []q", Rule::AxKBox),
                line("[]p -> [.][]p", Rule::AxT2),
            ],
        };
        assert_eq!(check_proof(&p), Ok(()));
        let p = ProofObject {
            system: System::Glt,
            lines: vec![
                line("p -> p", Rule::Taut),
                line("[.](p -> p)", Rule::NecTri(0)),
                line("[.](p -> p) -> [](p -> p)", Rule::AxT1),
                line("[](p -> p)", Rule::MP(1, 2)),
            ],
        };
        assert_eq!(check_proof(&p), Ok(()));
    }

    #[test]
    fn rejects_box_necessitation_and_bad_mp() {
        let p = ProofObject {
            system: System::Glt,
            lines: vec![line("p -> p", Rule::Taut), line("[](p -> p)", Rule::NecBox(0))],
        };
        assert_eq!(
            check_proof(&p),
            Err(ProofError {
                line: 2,
                reason: "rule not primitive".into()
            })
        );
        let p = ProofObject {
            system: System::Glt,
            lines: vec![
                line("q", Rule::Taut),
                line("p -> q", Rule::Taut),
                line("q", Rule::MP(0, 1)),
            ],
        };
        assert_eq!(check_proof(&p).unwrap_err().line, 1);
        let p = ProofObject {
            system: System::Glt,
            lines: vec![
                line("[.]p -> []p", Rule::AxT1),
                line("[]q", Rule::MP(0, 0)),
            ],
        };
        assert_eq!(
            check_proof(&p),
            Err(ProofError {
                line: 2,
                reason: "MP mismatch".into()
            })
        );
    }

    #[test]
    fn axioms_are_checked_per_system() {
        let t1 = ProofObject {
            system: System::Gl2,
            lines: vec![line("[.]p -> []p", Rule::AxT1)],
        };
        assert_eq!(check_proof(&t1).unwrap_err().line, 1);
        let ax2 = ProofObject {
            system: System::Gl2,
            lines: vec![line("[]p <-> [.][.]p", Rule::Ax2)],
        };
        assert_eq!(check_proof(&ax2), Ok(()));
        let gl = ProofObject {
            system: System::Gl,
            lines: vec![line("[]([]p -> p) -> []p", Rule::AxLTri)],
        };
        assert_eq!(check_proof(&gl), Ok(()));
        for (s, r) in [
            ("[.]([.]p -> p) -> [.]p", Rule::AxLTri),
            ("[.](a -> b) -> [.]a -> [.]b", Rule::AxKTri),
            ("[]p -> []p", Rule::AxT1),
            ("[][.]p -> []p", Rule::AxT4),
            ("[]p -> [][.]p", Rule::AxT3),
        ] {
            let ok = matches_schema(&r, &f(s));
            assert_eq!(ok, r != Rule::AxT1, "{s}");
        }
    }

    #[test]
    fn tautologies() {
        assert!(is_tautology(&f("[]p | ~[]p")));
        assert!(is_tautology(&f("<>p <-> ~[]~p")));
        assert!(is_tautology(&f("(a -> b) -> (b -> c) -> a -> c")));
        assert!(!is_tautology(&f("[]p -> p")));
        assert!(!is_tautology(&f("[]p -> [.]p")));
    }

    #[test]
    fn json_roundtrip() {
        let p = ProofObject {
            system: System::Glt,
            lines: vec![line("p -> p", Rule::Taut), line("[.](p -> p)", Rule::NecTri(0))],
        };
        assert_eq!(ProofObject::from_json(&p.to_json()).unwrap(), p);
        assert!(ProofObject::from_json(r#"{"system":"GLT","lines":[{"formula":"p","rule":"MP","refs":[1]}]}"#).is_err());
    }
}
