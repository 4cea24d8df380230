//! Finite tree-like Kripke models with the relations `≺` and `≺_R`.
//!
//! Worlds are indices `0..n` (n ≤ 64) and every relation is stored as one
//! successor bitmask per world, with `≺` kept transitively closed. Truth
//! values are computed as bitmasks over all worlds at once.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::ModalError;

pub const MAX_WORLDS: usize = 64;

/// Which relation interprets which modality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// One modality (either symbol) over `≺`.
    Gl,
    /// `△` over `≺`, `□` over `≺_R`.
    Glt,
    /// `△` over `≺`, `□` over the two-step relation `≺₂`.
    Gl2,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Gl => "gl",
            Semantics::Glt => "glt",
            Semantics::Gl2 => "gl2",
        }
    }
}

impl std::str::FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Semantics::Gl),
            "glt" => Ok(Semantics::Glt),
            "gl2" => Ok(Semantics::Gl2),
            other => Err(format!("unknown semantics `{other}` (expected gl, glt or gl2)")),
        }
    }
}

/// A finite rooted tree with root 0: `parent[i]` for `i ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeFrame {
    parent: Vec<usize>,
}

impl TreeFrame {
    /// `parents[i-1]` is the parent of world `i`. Returns `None` unless the
    /// array describes a tree rooted at 0.
    pub fn from_parents(parents: &[usize]) -> Option<TreeFrame> {
        let n = parents.len() + 1;
        if n > MAX_WORLDS {
            return None;
        }
        let mut parent = vec![0; n];
        for (i, &p) in parents.iter().enumerate() {
            if p >= n || p == i + 1 {
                return None;
            }
            parent[i + 1] = p;
        }
        // Every world must reach the root within n hops.
        for start in 1..n {
            let mut w = start;
            let mut hops = 0;
            while w != 0 {
                w = parent[w];
                hops += 1;
                if hops > n {
                    return None;
                }
            }
        }
        Some(TreeFrame { parent })
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent[1..]
    }

    /// Transitive successor masks of `≺`.
    pub fn successors(&self) -> Vec<u64> {
        let n = self.size();
        let mut succ = vec![0u64; n];
        for w in 1..n {
            let mut a = self.parent[w];
            loop {
                succ[a] |= 1 << w;
                if a == 0 {
                    break;
                }
                a = self.parent[a];
            }
        }
        succ
    }
}

/// A violated condition of the A-sound model definition (1 = tree-like
/// frame, 2–4 = inclusions for `≺_R`, 5 = reflexive witnesses).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: u8,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} violated: {}", self.condition, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    names: Vec<String>,
    root: usize,
    succ: Vec<u64>,
    succ_r: Vec<u64>,
    val: BTreeMap<String, u64>,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    worlds: Vec<String>,
    root: String,
    #[serde(default)]
    prec: Vec<(String, String)>,
    #[serde(default, rename = "precR")]
    prec_r: Vec<(String, String)>,
    #[serde(default)]
    val: BTreeMap<String, Vec<String>>,
}

impl KripkeModel {
    /// Builds a model from named parts, checking only that every reference
    /// names a world. Frame conditions are checked by
    /// [`KripkeModel::validate_frame`].
    pub fn new(
        worlds: Vec<String>,
        root: &str,
        prec: &[(String, String)],
        prec_r: &[(String, String)],
        val: &BTreeMap<String, Vec<String>>,
    ) -> Result<KripkeModel, ModalError> {
        let bad = |msg: String| ModalError::InvalidModel(msg);
        if worlds.is_empty() {
            return Err(bad("a model needs at least one world".into()));
        }
        if worlds.len() > MAX_WORLDS {
            return Err(bad(format!("at most {MAX_WORLDS} worlds are supported")));
        }
        let mut index = HashMap::new();
        for (i, w) in worlds.iter().enumerate() {
            if index.insert(w.as_str(), i).is_some() {
                return Err(bad(format!("duplicate world `{w}`")));
            }
        }
        let lookup = |w: &str| index.get(w).copied().ok_or_else(|| bad(format!("unknown world `{w}`")));
        let relation = |pairs: &[(String, String)]| -> Result<Vec<u64>, ModalError> {
            let mut succ = vec![0u64; worlds.len()];
            for (a, b) in pairs {
                succ[lookup(a)?] |= 1 << lookup(b)?;
            }
            Ok(succ)
        };
        let succ = relation(prec)?;
        let succ_r = relation(prec_r)?;
        let mut masks = BTreeMap::new();
        for (var, ws) in val {
            let mut m = 0u64;
            for w in ws {
                m |= 1 << lookup(w)?;
            }
            masks.insert(var.clone(), m);
        }
        Ok(KripkeModel {
            root: lookup(root)?,
            names: worlds,
            succ,
            succ_r,
            val: masks,
        })
    }

    /// A model on a tree frame with worlds named `w0, w1, …`.
    pub fn from_frame(frame: &TreeFrame, succ_r: Vec<u64>, val: BTreeMap<String, u64>) -> KripkeModel {
        let n = frame.size();
        assert_eq!(succ_r.len(), n);
        KripkeModel {
            names: (0..n).map(|i| format!("w{i}")).collect(),
            root: 0,
            succ: frame.successors(),
            succ_r,
            val,
        }
    }

    /// Parses the JSON model format and checks conditions 1–4.
    pub fn from_json(text: &str) -> Result<KripkeModel, ModalError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| ModalError::InvalidModel(e.to_string()))?;
        let m = KripkeModel::new(file.worlds, &file.root, &file.prec, &file.prec_r, &file.val)?;
        m.validate_frame().map_err(ModalError::Violation)?;
        Ok(m)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let pairs = |succ: &[u64]| -> Vec<(String, String)> {
            let mut out = Vec::new();
            for (a, &m) in succ.iter().enumerate() {
                for b in bits(m) {
                    out.push((self.names[a].clone(), self.names[b].clone()));
                }
            }
            out
        };
        let file = ModelFile {
            worlds: self.names.clone(),
            root: self.names[self.root].clone(),
            prec: pairs(&self.succ),
            prec_r: pairs(&self.succ_r),
            val: self
                .val
                .iter()
                .map(|(v, &m)| (v.clone(), bits(m).map(|w| self.names[w].clone()).collect()))
                .collect(),
        };
        serde_json::to_value(file).expect("model serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("model serializes")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn world_name(&self, w: usize) -> &str {
        &self.names[w]
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn prec(&self, a: usize, b: usize) -> bool {
        self.succ[a] >> b & 1 == 1
    }

    pub fn prec_r(&self, a: usize, b: usize) -> bool {
        self.succ_r[a] >> b & 1 == 1
    }

    /// `a ≺₂ b`: some `c` has `a ≺ c ≺ b`.
    pub fn prec2(&self, a: usize, b: usize) -> bool {
        self.two_step()[a] >> b & 1 == 1
    }

    pub fn valuation(&self, var: &str) -> u64 {
        self.val.get(var).copied().unwrap_or(0)
    }

    fn two_step(&self) -> Vec<u64> {
        self.succ
            .iter()
            .map(|&m| bits(m).fold(0, |acc, c| acc | self.succ[c]))
            .collect()
    }

    /// Checks conditions 1–4 and reports the first failure.
    pub fn validate_frame(&self) -> Result<(), Violation> {
        let n = self.size();
        let name = |w: usize| self.names[w].as_str();
        let v = |condition: u8, detail: String| Err(Violation { condition, detail });
        for a in 0..n {
            if self.prec(a, a) {
                return v(1, format!("{} ≺ {} (≺ must be irreflexive)", name(a), name(a)));
            }
            for b in bits(self.succ[a]) {
                for c in bits(self.succ[b]) {
                    if !self.prec(a, c) {
                        return v(
                            1,
                            format!("{} ≺ {} ≺ {} but not {} ≺ {}", name(a), name(b), name(c), name(a), name(c)),
                        );
                    }
                }
            }
        }
        for w in 0..n {
            if w == self.root {
                if let Some(p) = (0..n).find(|&p| self.prec(p, w)) {
                    return v(1, format!("root {} has predecessor {}", name(w), name(p)));
                }
                continue;
            }
            if !self.prec(self.root, w) {
                return v(1, format!("{} is not reachable from the root", name(w)));
            }
            let preds: Vec<usize> = (0..n).filter(|&p| self.prec(p, w)).collect();
            let immediate = preds
                .iter()
                .filter(|&&p| !preds.iter().any(|&q| self.prec(p, q)))
                .count();
            if immediate != 1 {
                return v(1, format!("{} has {immediate} immediate predecessors", name(w)));
            }
        }
        for a in 0..n {
            for b in bits(self.succ_r[a]) {
                if !self.prec(a, b) {
                    return v(2, format!("{} ≺_R {} but not {} ≺ {}", name(a), name(b), name(a), name(b)));
                }
            }
        }
        for a in 0..n {
            for b in bits(self.succ[a]) {
                for c in bits(self.succ_r[b]) {
                    if !self.prec_r(a, c) {
                        return v(
                            3,
                            format!("{} ≺ {} ≺_R {} but not {} ≺_R {}", name(a), name(b), name(c), name(a), name(c)),
                        );
                    }
                }
            }
        }
        for a in 0..n {
            for b in bits(self.succ_r[a]) {
                for c in bits(self.succ[b]) {
                    if !self.prec_r(a, c) {
                        return v(
                            4,
                            format!("{} ≺_R {} ≺ {} but not {} ≺_R {}", name(a), name(b), name(c), name(a), name(c)),
                        );
                    }
                }
            }
        }
        Ok(())
    }

    /// Worlds where `△B → B` holds for every subformula `B` of `a`.
    pub fn reflexive_worlds(&self, a: &Formula) -> u64 {
        let n = self.size();
        let mut refl = full_mask(n);
        for b in a.desugar().subformulas() {
            let tb = self.truth_set_unchecked(&b, Semantics::Glt);
            let ttb = self.truth_set_unchecked(&super::formula::triangle(b), Semantics::Glt);
            refl &= !ttb | tb;
        }
        refl & full_mask(n)
    }

    /// Checks conditions 1–5 for the formula `a`.
    pub fn validate_model(&self, a: &Formula) -> Result<(), Violation> {
        self.validate_frame()?;
        let refl = self.reflexive_worlds(a);
        for x in 0..self.size() {
            for y in bits(self.succ_r[x]) {
                // A witness c with x ≺_R c ⪯ y.
                let below_y = (0..self.size()).filter(|&c| c == y || self.prec(c, y));
                if !below_y.into_iter().any(|c| self.prec_r(x, c) && refl >> c & 1 == 1) {
                    return Err(Violation {
                        condition: 5,
                        detail: format!(
                            "no reflexive world c with {} ≺_R c ⪯ {}",
                            self.names[x], self.names[y]
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Checks the preconditions of `sem` for evaluating `a`.
    pub fn check_semantics(&self, a: &Formula, sem: Semantics) -> Result<(), ModalError> {
        let frame_only = |m: &KripkeModel| match m.validate_frame() {
            Err(v) if v.condition == 1 => Err(ModalError::SemanticsMismatch(v.to_string())),
            _ => Ok(()),
        };
        match sem {
            Semantics::Gl => {
                if a.uses_box() && a.uses_triangle() {
                    return Err(ModalError::SemanticsMismatch(
                        "GL semantics needs a formula with a single modality".into(),
                    ));
                }
                frame_only(self)
            }
            Semantics::Gl2 => frame_only(self),
            Semantics::Glt => self
                .validate_model(a)
                .map_err(|v| ModalError::SemanticsMismatch(format!("model is not sound for the formula: {v}"))),
        }
    }

    /// Truth of `a` at world `w`.
    pub fn eval(&self, w: usize, a: &Formula, sem: Semantics) -> Result<bool, ModalError> {
        if w >= self.size() {
            return Err(ModalError::InvalidModel(format!("no world with index {w}")));
        }
        self.check_semantics(a, sem)?;
        Ok(self.truth_set_unchecked(a, sem) >> w & 1 == 1)
    }

    /// The set of worlds where `a` holds, without precondition checks.
    pub fn truth_set_unchecked(&self, a: &Formula, sem: Semantics) -> u64 {
        let two = if sem == Semantics::Gl2 { self.two_step() } else { Vec::new() };
        let box_rel: &[u64] = match sem {
            Semantics::Gl => &self.succ,
            Semantics::Glt => &self.succ_r,
            Semantics::Gl2 => &two,
        };
        self.truth(a, &self.succ, box_rel)
    }

    fn truth(&self, a: &Formula, tri: &[u64], bx: &[u64]) -> u64 {
        let all = full_mask(self.size());
        let necessity = |rel: &[u64], inner: u64| -> u64 {
            rel.iter()
                .enumerate()
                .filter(|(_, &m)| m & !inner == 0)
                .fold(0, |acc, (w, _)| acc | 1 << w)
        };
        let t = |f: &Formula| self.truth(f, tri, bx);
        match a {
            Formula::Bot => 0,
            Formula::Top => all,
            Formula::Var(v) => self.valuation(v) & all,
            Formula::Not(f) => !t(f) & all,
            Formula::And(f, g) => t(f) & t(g),
            Formula::Or(f, g) => t(f) | t(g),
            Formula::Implies(f, g) => (!t(f) | t(g)) & all,
            Formula::Iff(f, g) => !(t(f) ^ t(g)) & all,
            Formula::Box(f) => necessity(bx, t(f)),
            Formula::Diamond(f) => !necessity(bx, !t(f) & all) & all,
            Formula::Triangle(f) => necessity(tri, t(f)),
            Formula::Nabla(f) => !necessity(tri, !t(f) & all) & all,
        }
    }

    /// The submodel generated by `w`, renumbered in index order.
    pub fn generated_submodel(&self, w: usize) -> KripkeModel {
        let keep: Vec<usize> = (0..self.size()).filter(|&x| x == w || self.prec(w, x)).collect();
        let remap = |mask: u64| -> u64 {
            keep.iter()
                .enumerate()
                .filter(|(_, &old)| mask >> old & 1 == 1)
                .fold(0, |acc, (new, _)| acc | 1 << new)
        };
        KripkeModel {
            names: keep.iter().map(|&x| self.names[x].clone()).collect(),
            root: 0,
            succ: keep.iter().map(|&x| remap(self.succ[x])).collect(),
            succ_r: keep.iter().map(|&x| remap(self.succ_r[x])).collect(),
            val: self.val.iter().map(|(v, &m)| (v.clone(), remap(m))).collect(),
        }
    }
}
