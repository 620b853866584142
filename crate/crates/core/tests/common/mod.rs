//! Shared fixtures and random generators for the integration suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use sigkit_core::rational::{int, ratio, Rational};
use sigkit_core::{Structure, TailSignature};

pub const BRIDGE_DSL: &str = "x1&x4 | x2&x5 | x1&x3&x5 | x2&x3&x4";

pub fn bridge() -> Structure {
    Structure::parse(BRIDGE_DSL, 5).unwrap()
}

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

pub fn r(p: i64, q: i64) -> Rational {
    ratio(p, q)
}

pub fn i(p: i64) -> Rational {
    int(p)
}

/// Random semicoherent structure built from a random antichain of path
/// sets. Monotone by construction, with phi(empty) = 0 and phi(full) = 1.
pub fn random_structure<R: Rng>(rng: &mut R, n: usize) -> Structure {
    loop {
        let candidates = rng.gen_range(1..=4usize);
        let mut sets: Vec<Vec<u32>> = Vec::new();
        for _ in 0..candidates {
            let mut set: Vec<u32> = (1..=n as u32).filter(|_| rng.gen_bool(0.5)).collect();
            if set.is_empty() {
                set.push(rng.gen_range(1..=n as u32));
            }
            sets.push(set);
        }
        // Keep an antichain: drop any set containing a kept one.
        sets.sort_by_key(Vec::len);
        let mut kept: Vec<Vec<u32>> = Vec::new();
        'outer: for set in sets {
            for small in &kept {
                if small.iter().all(|x| set.contains(x)) {
                    continue 'outer;
                }
            }
            kept.push(set);
        }
        if let Ok(s) = Structure::from_path_sets(&kept, n) {
            return s;
        }
    }
}

/// Random monotone formula with nested AND / OR / k-of gates, exercising
/// tree shapes the DSL grammar cannot produce (gates inside k-of).
pub fn random_formula<R: Rng>(rng: &mut R, n: usize, depth: usize) -> sigkit_core::Formula {
    use sigkit_core::Formula;
    let var = |rng: &mut R| {
        Formula::Var(sigkit_core::Component::new(rng.gen_range(1..=n as u32), n).unwrap())
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return var(rng);
    }
    let children = |rng: &mut R, count: usize, depth: usize| -> Vec<Formula> {
        (0..count)
            .map(|_| random_formula(rng, n, depth - 1))
            .collect()
    };
    let kind = rng.gen_range(0..3);
    let count = if kind == 2 {
        rng.gen_range(2..=4)
    } else {
        rng.gen_range(2..=3)
    };
    match kind {
        0 => Formula::And(children(rng, count, depth)),
        1 => Formula::Or(children(rng, count, depth)),
        _ => Formula::KOf {
            k: rng.gen_range(1..=count),
            children: children(rng, count, depth),
        },
    }
}

/// Random valid tail signature on `n` components: starts at 1, ends at 0,
/// nonincreasing, entries in [0,1].
pub fn random_tail<R: Rng>(rng: &mut R, n: usize) -> TailSignature {
    let denom = rng.gen_range(2..=12i64);
    let mut inner: Vec<Rational> = (0..n.saturating_sub(1))
        .map(|_| ratio(rng.gen_range(0..=denom), denom))
        .collect();
    inner.sort_by(|a, b| b.cmp(a));
    let mut values = Vec::with_capacity(n + 1);
    values.push(int(1));
    values.extend(inner);
    values.push(int(0));
    TailSignature::new(values).unwrap()
}

/// Random permutation of `[1, n]` as a relabeling vector.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<u32> {
    let mut perm: Vec<u32> = (1..=n as u32).collect();
    perm.shuffle(rng);
    perm
}
