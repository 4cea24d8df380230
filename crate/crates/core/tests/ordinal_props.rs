mod common;

use std::cmp::Ordering;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_ordinal;
use slowprov::ordinal::{compare, parse_ordinal, stepdown_one, stepdown_path, Class, Ordinal, PathResult};

fn sample(seed: u64, count: usize, depth: u32) -> Vec<Ordinal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_ordinal(&mut rng, depth)).collect()
}

fn o(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

/// Ordinals below `ω^ω·3`: exponents are finite.
fn below_omega_omega_3(seed: u64, count: usize) -> Vec<Ordinal> {
    let bound = o("w^w*3");
    sample(seed, count * 4, 2)
        .into_iter()
        .filter(|a| *a < bound)
        .take(count)
        .collect()
}

#[test]
fn comparison_is_a_total_order() {
    let xs = sample(1, 60, 3);
    for a in &xs {
        assert_eq!(compare(a, a), Ordering::Equal);
        for b in &xs {
            assert_eq!(compare(a, b), compare(b, a).reverse());
            assert_eq!(compare(a, b) == Ordering::Equal, a == b);
            for c in &xs {
                if a <= b && b <= c {
                    assert!(a <= c, "{a} {b} {c}");
                }
            }
        }
        assert!(*a < Ordinal::epsilon_zero());
    }
}

#[test]
fn addition_is_associative_and_monotone() {
    let xs = below_omega_omega_3(2, 50);
    assert_eq!(xs.len(), 50);
    for a in &xs {
        for b in &xs {
            let ab = a.add(b).unwrap();
            assert!(ab >= *a);
            if !b.is_zero() {
                assert!(ab > *a, "{a} + {b}");
            }
            for c in xs.iter().take(15) {
                let left = ab.add(c).unwrap();
                let right = a.add(&b.add(c).unwrap()).unwrap();
                assert_eq!(left, right, "({a} + {b}) + {c}");
                if b < c {
                    assert!(a.add(b).unwrap() < a.add(c).unwrap());
                    assert!(b.add(a).unwrap() <= c.add(a).unwrap());
                }
            }
        }
    }
}

#[test]
fn powers_of_omega_multiply_by_adding_exponents() {
    let xs = sample(3, 40, 2);
    for a in &xs {
        for b in &xs {
            let product = a.omega_pow().unwrap().mul(&b.omega_pow().unwrap()).unwrap();
            assert_eq!(product, a.add(b).unwrap().omega_pow().unwrap(), "{a}, {b}");
        }
    }
}

#[test]
fn fundamental_sequences_increase_to_their_limit() {
    let mut limits: Vec<Ordinal> = sample(4, 200, 3)
        .into_iter()
        .filter(|a| a.classify() == Class::Limit)
        .collect();
    limits.extend(["w", "w^w", "e0", "w^(w+1)*2", "w^(w^w) + w^2"].map(o));
    assert!(limits.len() > 30);
    for lambda in &limits {
        let seq: Vec<Ordinal> = (0..=21).map(|n| lambda.fund_seq(n).unwrap()).collect();
        for n in 0..=20 {
            assert!(seq[n] < seq[n + 1], "{lambda}[{n}]");
            assert!(seq[n + 1] < *lambda, "{lambda}[{}]", n + 1);
        }
    }
}

#[test]
fn stepdown_is_deterministic_and_descends() {
    for (k, a) in sample(5, 80, 3).iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let n = BigUint::from(k as u64 % 5);
        let b = stepdown_one(a, &n).unwrap();
        assert_eq!(b, stepdown_one(a, &n).unwrap());
        assert!(b < *a);
        match stepdown_path(a, &n, &b, 3) {
            PathResult::Reached { steps, path } => {
                assert_eq!(steps, 1);
                assert_eq!(path, vec![a.clone(), b.clone()]);
            }
            other => panic!("{a} to {b}: {other:?}"),
        }
    }
}

#[test]
fn stepdown_paths_are_strictly_decreasing() {
    for start in ["w^w", "w^2*3 + 5", "e0", "w^(w+2)"] {
        let start = o(start);
        let n = BigUint::from(2u32);
        let PathResult::StepBudgetExceeded { partial } = stepdown_path(&start, &n, &Ordinal::from(0), 200) else {
            continue;
        };
        for w in partial.windows(2) {
            assert!(w[1] < w[0]);
            assert_eq!(stepdown_one(&w[0], &n).unwrap(), w[1]);
        }
    }
    match stepdown_path(&o("w*2"), &BigUint::from(1u32), &Ordinal::from(0), 100) {
        PathResult::Reached { steps, path } => {
            assert_eq!(steps, path.len() - 1);
            assert_eq!(path.last(), Some(&Ordinal::zero()));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn targets_off_the_path_are_reported() {
    // w[3] = 3 skips every finite ordinal above 3.
    assert_eq!(stepdown_path(&o("w"), &BigUint::from(3u32), &o("5"), 100), PathResult::NotOnPath);
    assert_eq!(stepdown_path(&o("w"), &BigUint::from(3u32), &o("w+1"), 100), PathResult::NotOnPath);
}

proptest! {
    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_ordinal(&mut rng, 4);
        prop_assert_eq!(parse_ordinal(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn finite_arithmetic_matches_integers(x in 0u64..1000, y in 0u64..1000) {
        let (a, b) = (Ordinal::from(x), Ordinal::from(y));
        prop_assert_eq!(a.add(&b).unwrap(), Ordinal::from(x + y));
        prop_assert_eq!(a.mul(&b).unwrap(), Ordinal::from(x * y));
        prop_assert_eq!(compare(&a, &b), x.cmp(&y));
    }
}
