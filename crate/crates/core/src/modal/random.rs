//! Random A-sound models.
//!
//! A random tree and valuation are drawn together with a random set of
//! candidate reflexive worlds `C`, and `≺_R` is taken to be
//! `{(a, b) | a ≺ c ⪯ b for some c ∈ C}`, which satisfies conditions 2–4
//! by construction. Worlds of `C` that fail `△B → B` are then dropped
//! and `≺_R` rebuilt until `C` is stable; `C` only shrinks, so this
//! terminates, and at the fixpoint condition 5 holds with witnesses in `C`.

use std::collections::BTreeMap;

use rand::Rng;

use super::formula::Formula;
use super::model::{KripkeModel, TreeFrame};

fn relation_from(succ: &[u64], refl: u64) -> Vec<u64> {
    succ.iter()
        .map(|&m| {
            (0..succ.len())
                .filter(|&c| m >> c & 1 == 1 && refl >> c & 1 == 1)
                .fold(0u64, |acc, c| acc | 1 << c | succ[c])
        })
        .collect()
}

/// A random model with between 1 and `max_size` worlds that is A-sound
/// for `a`, valuing `vars` (and nothing else).
pub fn random_a_sound_model<R: Rng>(rng: &mut R, a: &Formula, max_size: usize, vars: &[String]) -> KripkeModel {
    let n = rng.gen_range(1..=max_size.clamp(1, 64));
    let parents: Vec<usize> = (1..n).map(|i| rng.gen_range(0..i)).collect();
    let frame = TreeFrame::from_parents(&parents).expect("parents precede children");
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let val: BTreeMap<String, u64> = vars.iter().map(|v| (v.clone(), rng.gen::<u64>() & all)).collect();
    let succ = frame.successors();
    let mut refl = rng.gen::<u64>() & all;
    loop {
        let model = KripkeModel::from_frame(&frame, relation_from(&succ, refl), val.clone());
        let kept = refl & model.reflexive_worlds(a);
        if kept == refl {
            return model;
        }
        refl = kept;
    }
}
