//! Seeded random instances and weights for property checks and the self-test.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::PreferenceSystem;
use crate::reduction::{CnfFormula, Literal};
use crate::weights::{Weight, WeightMap};

/// Shape limits for [`random_instance`].
#[derive(Clone, Copy, Debug)]
pub struct InstanceShape {
    pub max_a: usize,
    pub max_b: usize,
    pub max_edges: usize,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape {
            max_a: 4,
            max_b: 4,
            max_edges: 12,
        }
    }
}

/// A random preference system without isolated vertices: sides of 1..=max
/// vertices named `a1..`, `b1..`, a random edge set and shuffled lists.
pub fn random_instance<R: Rng>(rng: &mut R, shape: InstanceShape) -> PreferenceSystem {
    let na = rng.gen_range(1..=shape.max_a);
    let nb = rng.gen_range(1..=shape.max_b);
    let mut adjacent = vec![vec![false; nb]; na];
    // Cover every vertex first, then sprinkle extra edges.
    for i in 0..na {
        adjacent[i][rng.gen_range(0..nb)] = true;
    }
    for j in 0..nb {
        if !(0..na).any(|i| adjacent[i][j]) {
            adjacent[rng.gen_range(0..na)][j] = true;
        }
    }
    let used = adjacent.iter().flatten().filter(|&&x| x).count();
    let budget = shape.max_edges.min(na * nb).max(used);
    let target = rng.gen_range(used..=budget);
    let mut missing: Vec<(usize, usize)> = (0..na)
        .flat_map(|i| (0..nb).map(move |j| (i, j)))
        .filter(|&(i, j)| !adjacent[i][j])
        .collect();
    missing.shuffle(rng);
    for &(i, j) in missing.iter().take(target - used) {
        adjacent[i][j] = true;
    }

    let a_names: Vec<String> = (1..=na).map(|i| format!("a{i}")).collect();
    let b_names: Vec<String> = (1..=nb).map(|j| format!("b{j}")).collect();
    let mut prefs = Vec::new();
    for i in 0..na {
        let mut list: Vec<String> = (0..nb)
            .filter(|&j| adjacent[i][j])
            .map(|j| b_names[j].clone())
            .collect();
        list.shuffle(rng);
        prefs.push((a_names[i].clone(), list));
    }
    for j in 0..nb {
        let mut list: Vec<String> = (0..na)
            .filter(|&i| adjacent[i][j])
            .map(|i| a_names[i].clone())
            .collect();
        list.shuffle(rng);
        prefs.push((b_names[j].clone(), list));
    }
    PreferenceSystem::new(&a_names, &b_names, &prefs).expect("generated instance is valid")
}

/// Integer weights drawn uniformly from `0..=max`.
pub fn random_weights<R: Rng>(rng: &mut R, ps: &PreferenceSystem, max: i64) -> WeightMap {
    let weights = (0..ps.num_edges())
        .map(|_| Weight::from_integer(rng.gen_range(0..=max).into()))
        .collect();
    WeightMap::from_vec(ps, weights).expect("one weight per edge")
}

/// A random formula over `1..=max_vars` variables with `1..=max_clauses`
/// clauses. Monotone clauses only when `monotone` is set.
pub fn random_formula<R: Rng>(rng: &mut R, max_vars: usize, max_clauses: usize, monotone: bool) -> CnfFormula {
    let n = rng.gen_range(1..=max_vars);
    let k = rng.gen_range(1..=max_clauses);
    let clauses = (0..k)
        .map(|_| {
            let mut vars: Vec<usize> = (1..=n).collect();
            vars.shuffle(rng);
            let len = rng.gen_range(1..=n.min(3));
            let sign = rng.gen_bool(0.5);
            vars[..len]
                .iter()
                .map(|&var| Literal {
                    var,
                    positive: if monotone { sign } else { rng.gen_bool(0.5) },
                })
                .collect()
        })
        .collect();
    CnfFormula::from_literals(n, clauses).expect("generated formula is valid")
}
