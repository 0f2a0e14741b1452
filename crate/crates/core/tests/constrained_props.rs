use std::collections::BTreeSet;

use popmatch::constrained::{
    all_popular_matchings, bounded_forbidden, exclusive_popular_set, solve_pmffe, PopularStructure,
    SearchBudget,
};
use popmatch::oracle::{popular_set, DEFAULT_CAP};
use popmatch::popularity::is_popular;
use popmatch::random::{random_instance, InstanceShape};
use popmatch::{ConstraintSet, Edge, PreferenceSystem};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_constraints<R: Rng>(rng: &mut R, ps: &PreferenceSystem) -> ConstraintSet {
    loop {
        let mut cs = ConstraintSet::new();
        for v in ps.vertices() {
            match rng.gen_range(0..8) {
                0 => cs = cs.force_node(v),
                1 => cs = cs.forbid_node(v),
                _ => {}
            }
        }
        for &e in ps.edges() {
            match rng.gen_range(0..8) {
                0 => cs = cs.force_edge(e),
                1 => cs = cs.forbid_edge(e),
                _ => {}
            }
        }
        if cs.validate(ps).is_ok() {
            return cs;
        }
    }
}

/// A single constraint of a random kind, to hit the polynomial branches.
fn single_constraint<R: Rng>(rng: &mut R, ps: &PreferenceSystem) -> ConstraintSet {
    let vs: Vec<_> = ps.vertices().collect();
    let es = ps.edges();
    let v = vs[rng.gen_range(0..vs.len())];
    let e = es[rng.gen_range(0..es.len())];
    match rng.gen_range(0..4) {
        0 => ConstraintSet::new().force_node(v),
        1 => ConstraintSet::new().forbid_node(v),
        2 => ConstraintSet::new().force_edge(e),
        _ => ConstraintSet::new().forbid_edge(e),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pmffe_agrees_with_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ps = random_instance(&mut rng, InstanceShape::default());
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        for round in 0..8 {
            let cs = if round % 2 == 0 { single_constraint(&mut rng, &ps) } else { random_constraints(&mut rng, &ps) };
            let expected = report.popular.iter().any(|m| cs.is_satisfied_by(m));
            let out = solve_pmffe(&ps, &cs, SearchBudget::exponential()).unwrap();
            prop_assert_eq!(out.is_found(), expected);
            if let Some(m) = out.matching() {
                prop_assert!(cs.is_satisfied_by(m));
                prop_assert!(is_popular(&ps, m).unwrap().popular);
            }
        }
    }

    #[test]
    fn edge_decompositions(seed in any::<u64>()) {
        let ps = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), InstanceShape::default());
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        let structure = PopularStructure::new(&ps);
        for &e in ps.edges() {
            let c = structure.classify(e);
            prop_assert_eq!(c.in_some_popular, report.popular.iter().any(|m| m.contains(e)));
            prop_assert_eq!(c.avoided_by_some_popular, report.popular.iter().any(|m| !m.contains(e)));
        }
    }

    #[test]
    fn fallback_lists_every_popular_matching(seed in any::<u64>()) {
        let ps = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), InstanceShape::default());
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        let listed: BTreeSet<Vec<usize>> = all_popular_matchings(&ps, SearchBudget::exponential())
            .unwrap()
            .iter()
            .map(|m| m.encoding(&ps))
            .collect();
        let expected: BTreeSet<Vec<usize>> = report.popular.iter().map(|m| m.encoding(&ps)).collect();
        prop_assert_eq!(listed, expected);
    }

    #[test]
    fn exclusive_and_bounded_agree_with_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ps = random_instance(&mut rng, InstanceShape::default());
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        let budget = SearchBudget::exponential();
        for _ in 0..4 {
            let u: BTreeSet<_> = ps.vertices().filter(|_| rng.gen_bool(0.7)).collect();
            let out = exclusive_popular_set(&ps, &u, budget).unwrap();
            prop_assert_eq!(out.is_found(), report.popular.iter().any(|m| m.covered() == u));
            if let Some(m) = out.matching() {
                prop_assert_eq!(m.covered(), u.clone());
            }

            let f: BTreeSet<Edge> = ps.edges().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let q = rng.gen_range(0..=2);
            let count = |m: &popmatch::Matching| f.iter().filter(|&&e| m.contains(e)).count();
            let out = bounded_forbidden(&ps, &f, q, budget).unwrap();
            prop_assert_eq!(out.is_found(), report.popular.iter().any(|m| count(m) <= q));
            if let Some(m) = out.matching() {
                prop_assert!(count(m) <= q && report.is_popular(m));
            }
        }
    }
}
