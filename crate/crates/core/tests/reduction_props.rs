use std::collections::BTreeSet;

use popmatch::acceptance::two_colorable;
use popmatch::constrained::SearchBudget;
use popmatch::oracle::{popular_set, DEFAULT_CAP};
use popmatch::popularity::{is_popular, label_edges};
use popmatch::random::random_formula;
use popmatch::reduction::{
    assignment_to_matching, brute_force_sat, build_graph, decide_sat, matching_to_assignment,
    normalize_monotone, pad_constraints, solve_via_matching, to_monotone, CnfFormula, GadgetMap,
};
use popmatch::{Matching, PreferenceSystem};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn budget() -> SearchBudget {
    SearchBudget::exponential().with_max_edges(usize::MAX)
}

fn three_clause_example() -> CnfFormula {
    CnfFormula::new(5, &[&[1, 2, 3], &[-1, -2, -4], &[2, 4, 5]]).unwrap()
}

fn contradiction() -> CnfFormula {
    CnfFormula::new(1, &[&[1], &[-1]]).unwrap()
}

fn names(ps: &PreferenceSystem, m: &Matching, pairs: &[(&str, &str)]) -> bool {
    pairs
        .iter()
        .all(|(x, y)| m.contains(ps.edge_by_names(x, y).unwrap()))
}

fn exposed(ps: &PreferenceSystem, m: &Matching) -> BTreeSet<String> {
    ps.vertices()
        .filter(|&v| !m.is_matched(v))
        .map(|v| ps.name(v).to_string())
        .collect()
}

fn expected_exposed(gm: &GadgetMap) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = gm.gadgets.iter().filter_map(|g| g.h.clone()).collect();
    out.insert(gm.special.s.clone());
    out
}

fn check_completeness(f: &CnfFormula, assignment: &[bool]) -> std::result::Result<(), TestCaseError> {
    let (ps, gm) = build_graph(f).unwrap();
    let m = assignment_to_matching(&ps, &gm, assignment).unwrap();
    prop_assert!(names(&ps, &m, &[("t", "u"), ("v", "w"), ("x", "y")]));
    prop_assert_eq!(exposed(&ps, &m), expected_exposed(&gm));
    if f.evaluate(assignment) {
        prop_assert!(is_popular(&ps, &m).unwrap().popular);
        let lg = label_edges(&ps, &m).unwrap();
        let plus: Vec<String> = lg.plus_plus_edges().iter().map(|&e| ps.edge_label(e)).collect();
        prop_assert_eq!(plus, vec!["w x".to_string()]);
        let back = matching_to_assignment(&ps, &gm, &m, f.num_vars()).unwrap();
        prop_assert!(f.evaluate(&back));
        for (i, value) in back.iter().enumerate() {
            let occurs = gm.gadgets.iter().any(|g| g.literal.var == i + 1);
            if occurs {
                prop_assert_eq!(*value, assignment[i]);
            }
        }
    }
    Ok(())
}

#[test]
fn three_clause_example_matching() {
    let f = three_clause_example();
    let (ps, gm) = build_graph(&f).unwrap();
    assert_eq!(gm.gadgets.len(), 9);
    let assignment = [true, false, false, true, true];
    let m = assignment_to_matching(&ps, &gm, &assignment).unwrap();
    assert!(!names(&ps, &m, &[("s", "t")]) && !names(&ps, &m, &[("w", "x")]));
    let back = matching_to_assignment(&ps, &gm, &m, 5).unwrap();
    assert_eq!(back, assignment);
    assert!(f.evaluate(&back));
    check_completeness(&f, &assignment).unwrap();
}

#[test]
fn matching_to_assignment_rejects_bad_input() {
    let (ps, gm) = build_graph(&contradiction()).unwrap();
    let report = popular_set(&ps, DEFAULT_CAP).unwrap();
    // Unsatisfiable: every popular matching uses st or wx.
    for m in &report.popular {
        assert!(matching_to_assignment(&ps, &gm, m, 1).is_err());
    }
    let m = assignment_to_matching(&ps, &gm, &[true]).unwrap();
    assert!(!is_popular(&ps, &m).unwrap().popular);
    assert!(matching_to_assignment(&ps, &gm, &m, 1).is_err());
    assert!(assignment_to_matching(&ps, &gm, &[]).is_err());
}

#[test]
fn decide_sat_examples() {
    assert!(!decide_sat(&contradiction(), budget()).unwrap());
    let two = CnfFormula::new(2, &[&[1, 2], &[-1, -2]]).unwrap();
    assert!(decide_sat(&two, budget()).unwrap());
    let empty = CnfFormula::new(3, &[]).unwrap();
    assert!(decide_sat(&empty, budget()).unwrap());
    assert!(decide_sat(&two, SearchBudget::polynomial_only()).is_err());
}

/// Structural properties of every popular matching of G((x1) ∧ (¬x1)).
#[test]
fn structure_of_popular_matchings_through_tu() {
    let (ps, gm) = build_graph(&contradiction()).unwrap();
    let report = popular_set(&ps, DEFAULT_CAP).unwrap();
    let edge = |x: &str, y: &str| ps.edge_by_names(x, y).unwrap();
    let favorite = |m: &Matching, v: &str| {
        let v = ps.vertex(v).unwrap();
        m.partner(v) == Some(ps.prefs(v)[0])
    };
    let consistency = gm.edges(&ps, &gm.consistency_edges).unwrap();
    let evicted = gm.edges(&ps, &gm.evicted_edges).unwrap();
    let mut through_tu = 0;
    for m in &report.popular {
        if !evicted.iter().any(|&e| m.contains(e)) {
            assert!(consistency.iter().all(|&e| !m.contains(e)));
        }
        let avoids = !m.contains(edge("s", "t")) && !m.contains(edge("w", "x"));
        let chain = m.contains(edge("t", "u")) && m.contains(edge("x", "y"));
        let ends = !m.is_matched(ps.vertex("s").unwrap()) && m.is_matched(ps.vertex("y").unwrap());
        assert_eq!(avoids, chain);
        assert_eq!(chain, ends);
        if !m.contains(edge("t", "u")) {
            continue;
        }
        through_tu += 1;
        for name in gm.apexes_and_gateways() {
            assert!(favorite(m, &name), "{name} not at its favorite");
        }
        assert!(consistency.iter().chain(&evicted).all(|&e| !m.contains(e)));
        for g in &gm.gadgets {
            let t = gm.edges(&ps, &g.true_edges()).unwrap();
            let f = gm.edges(&ps, &g.false_edges()).unwrap();
            let t_in = t.iter().all(|&e| m.contains(e));
            let f_in = f.iter().all(|&e| m.contains(e));
            assert!(t_in != f_in);
        }
    }
    assert!(through_tu > 0);
}

#[test]
fn padding_pairs_are_always_matched() {
    let (ps, gm) = build_graph(&contradiction()).unwrap();
    let pad = pad_constraints(&ps, &gm, 1, 1).unwrap();
    let report = popular_set(&pad.ps, DEFAULT_CAP).unwrap();
    assert!(!report.popular.is_empty());
    for m in &report.popular {
        assert!(pad.forced_edges.iter().all(|&e| m.contains(e)));
    }
    let tu = pad.ps.edge_by_names("t", "u").unwrap();
    for m in report.popular.iter().filter(|m| m.contains(tu)) {
        assert!(pad.forbidden_edges.iter().all(|&e| !m.contains(e)));
        assert!(pad.forbidden_nodes.iter().all(|&v| !m.is_matched(v)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn monotone_rewrites_preserve_satisfiability(seed in any::<u64>()) {
        let f = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), 4, 4, false);
        let m = to_monotone(&f);
        prop_assert!(m.is_monotone());
        let n = normalize_monotone(&m).unwrap();
        prop_assert!(n.is_normalized());
        let sat = brute_force_sat(&f).is_some();
        prop_assert_eq!(brute_force_sat(&m).is_some(), sat);
        prop_assert_eq!(brute_force_sat(&n).is_some(), sat);
        if let Some(a) = brute_force_sat(&m) {
            prop_assert!(f.evaluate(&a[..f.num_vars()]));
        }
        prop_assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn graphs_are_bipartite(seed in any::<u64>()) {
        let f = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), 4, 5, true);
        let (ps, gm) = build_graph(&normalize_monotone(&f).unwrap()).unwrap();
        prop_assert!(two_colorable(&ps));
        prop_assert_eq!(GadgetMap::from_json(&gm.to_json()).unwrap(), gm);
    }

    #[test]
    fn satisfying_assignments_give_popular_matchings(seed in any::<u64>()) {
        let f = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), 3, 4, true);
        let n = f.num_vars();
        for mask in 0u32..1 << n {
            let a: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            check_completeness(&f, &a)?;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Formulas with at most three variables and three clauses after
    /// normalization.
    #[test]
    fn decide_sat_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = loop {
            let f = random_formula(&mut rng, 3, 3, true);
            let n = normalize_monotone(&f).unwrap();
            if n.clauses().len() <= 3 && n.num_vars() <= 3 {
                break f;
            }
        };
        let found = solve_via_matching(&f, budget()).unwrap();
        prop_assert_eq!(found.is_some(), brute_force_sat(&f).is_some());
        if let Some(a) = found {
            prop_assert!(f.evaluate(&a));
        }
    }
}
