//! A tableau for GL with a single modality, written here as `△`.
//!
//! A branch is saturated propositionally; each false `△B` then spawns a
//! child holding `B` false and `△B` true, together with `A, △A` for every
//! true `△A`. Since `△B` is new in the child, the set of true boxes grows
//! strictly along every path, which bounds the depth by the number of `△`
//! subformulas. Open tableaux are read off as finite trees, which are
//! GL countermodels.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::formula::Formula;
use super::model::{KripkeModel, TreeFrame};

/// A world of an open tableau.
#[derive(Debug, Clone)]
pub(crate) struct OpenNode {
    true_atoms: BTreeSet<String>,
    children: Vec<OpenNode>,
}

#[derive(Clone, Default)]
struct Branch {
    true_atoms: BTreeSet<String>,
    false_atoms: BTreeSet<String>,
    true_boxes: BTreeSet<Formula>,
    false_boxes: BTreeSet<Formula>,
}

type ChildKey = (BTreeSet<Formula>, Formula);

pub(crate) struct Tableau {
    memo: HashMap<ChildKey, Option<OpenNode>>,
}

impl Tableau {
    pub fn new() -> Self {
        Tableau { memo: HashMap::new() }
    }

    /// Looks for a world refuting `f`; `f` must be desugared and use `△`
    /// as its only modality.
    pub fn refute(&mut self, f: &Formula) -> Option<OpenNode> {
        self.expand(Branch::default(), vec![(false, f.clone())])
    }

    fn expand(&mut self, mut b: Branch, mut todo: Vec<(bool, Formula)>) -> Option<OpenNode> {
        while let Some((sign, f)) = todo.pop() {
            match f {
                Formula::Top if !sign => return None,
                Formula::Bot if sign => return None,
                Formula::Top | Formula::Bot => {}
                Formula::Var(v) => {
                    let (same, other) = if sign {
                        (&mut b.true_atoms, &b.false_atoms)
                    } else {
                        (&mut b.false_atoms, &b.true_atoms)
                    };
                    if other.contains(&v) {
                        return None;
                    }
                    same.insert(v);
                }
                Formula::Not(a) => todo.push((!sign, *a)),
                Formula::And(x, y) if sign => todo.extend([(true, *x), (true, *y)]),
                Formula::Or(x, y) if !sign => todo.extend([(false, *x), (false, *y)]),
                Formula::Implies(x, y) if !sign => todo.extend([(true, *x), (false, *y)]),
                Formula::And(x, y) => return self.split(b, todo, vec![(false, *x)], vec![(false, *y)]),
                Formula::Or(x, y) => return self.split(b, todo, vec![(true, *x)], vec![(true, *y)]),
                Formula::Implies(x, y) => return self.split(b, todo, vec![(false, *x)], vec![(true, *y)]),
                Formula::Iff(x, y) => {
                    let (x, y) = (*x, *y);
                    let left = vec![(true, x.clone()), (sign, y.clone())];
                    let right = vec![(false, x), (!sign, y)];
                    return self.split(b, todo, left, right);
                }
                Formula::Triangle(a) => {
                    if sign {
                        b.true_boxes.insert(*a);
                    } else {
                        b.false_boxes.insert(*a);
                    }
                }
                Formula::Box(_) | Formula::Diamond(_) | Formula::Nabla(_) => {
                    unreachable!("tableau input must be desugared and use only △")
                }
            }
        }
        let mut children = Vec::new();
        for target in &b.false_boxes {
            children.push(self.child(&b.true_boxes, target)?);
        }
        Some(OpenNode {
            true_atoms: b.true_atoms,
            children,
        })
    }

    fn split(
        &mut self,
        b: Branch,
        todo: Vec<(bool, Formula)>,
        left: Vec<(bool, Formula)>,
        right: Vec<(bool, Formula)>,
    ) -> Option<OpenNode> {
        let mut t = todo.clone();
        t.extend(left);
        if let Some(node) = self.expand(b.clone(), t) {
            return Some(node);
        }
        let mut t = todo;
        t.extend(right);
        self.expand(b, t)
    }

    fn child(&mut self, boxes: &BTreeSet<Formula>, target: &Formula) -> Option<OpenNode> {
        let key = (boxes.clone(), target.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut todo = vec![(false, target.clone())];
        let mut branch = Branch::default();
        for a in boxes {
            todo.push((true, a.clone()));
            branch.true_boxes.insert(a.clone());
        }
        branch.true_boxes.insert(target.clone());
        let result = self.expand(branch, todo);
        self.memo.insert(key, result.clone());
        result
    }
}

impl OpenNode {
    /// Flattens the tableau into a model with worlds numbered in preorder.
    pub fn into_model(self, variables: &[String]) -> KripkeModel {
        let mut parents = Vec::new();
        let mut atoms = Vec::new();
        fn walk(node: OpenNode, parent: Option<usize>, parents: &mut Vec<usize>, atoms: &mut Vec<BTreeSet<String>>) {
            let me = atoms.len();
            if let Some(p) = parent {
                parents.push(p);
            }
            atoms.push(node.true_atoms);
            for c in node.children {
                walk(c, Some(me), parents, atoms);
            }
        }
        walk(self, None, &mut parents, &mut atoms);
        let frame = TreeFrame::from_parents(&parents).expect("tableau output is a tree");
        let mut val = BTreeMap::new();
        for v in variables {
            let mask = atoms
                .iter()
                .enumerate()
                .filter(|(_, a)| a.contains(v))
                .fold(0u64, |acc, (w, _)| acc | 1 << w);
            val.insert(v.clone(), mask);
        }
        KripkeModel::from_frame(&frame, vec![0; atoms.len()], val)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(OpenNode::size).sum::<usize>()
    }
}
