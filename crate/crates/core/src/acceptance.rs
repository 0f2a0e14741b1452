//! The acceptance suite: ten seeded checks against the exhaustive oracle,
//! shared by the `acceptance` test target and `popmatch selftest`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use num::{BigRational, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constrained::{PopularStructure, SearchBudget};
use crate::dominant::two_level_gale_shapley;
use crate::error::Result;
use crate::fixtures;
use crate::instance::PreferenceSystem;
use crate::matching::Matching;
use crate::oracle::{enumerate_matchings, node_chain_holds, popular_set, EnumerationReport, DEFAULT_CAP};
use crate::popularity::{is_popular, label_edges};
use crate::random::{random_formula, random_instance, random_weights, InstanceShape};
use crate::reduction::{
    assignment_to_matching, brute_force_sat, build_graph, decide_sat, normalize_monotone, CnfFormula,
};
use crate::stable::{all_stable_matchings, max_weight_stable};
use crate::weighted::{mwp_exact, mwp_half_approx};
use crate::weights::WeightMap;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {}: {} ({:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

pub const CRITERIA: [(usize, &str); 10] = [
    (1, "popularity oracle equivalence"),
    (2, "node containment chain"),
    (3, "size dichotomy"),
    (4, "edge decompositions"),
    (5, "half approximation"),
    (6, "reduction completeness"),
    (7, "reduction soundness"),
    (8, "structural properties"),
    (9, "stable machinery"),
    (10, "bipartiteness"),
];

/// Runs one criterion. Errors from the library count as failures.
pub fn run_criterion(id: usize, seed: u64) -> CriterionOutcome {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown", |(_, n)| n);
    let start = Instant::now();
    let result = match id {
        1 => popularity_equivalence(seed),
        2 => node_chain(seed),
        3 => size_dichotomy(seed),
        4 => edge_decompositions(seed),
        5 => approximation(seed),
        6 => reduction_completeness(),
        7 => reduction_soundness(),
        8 => structural_properties(),
        9 => stable_machinery(seed),
        10 => bipartiteness(seed),
        _ => Ok(Check::fail(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(c) => (c.passed, c.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let limit = match id {
        1 => Some(Duration::from_secs(60)),
        6 => Some(Duration::from_secs(10)),
        7 => Some(Duration::from_secs(600)),
        _ => None,
    };
    if let Some(limit) = limit {
        if elapsed >= limit {
            passed = false;
            detail = format!("{detail}; over the {limit:?} limit");
        }
    }
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, seed)).collect()
}

struct Check {
    passed: bool,
    detail: String,
}

impl Check {
    fn new(violations: usize, detail: String) -> Self {
        Check {
            passed: violations == 0,
            detail: format!("{detail}, {violations} violations"),
        }
    }

    fn fail(detail: String) -> Self {
        Check { passed: false, detail }
    }
}

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn instances(seed: u64, salt: u64, count: usize) -> impl Iterator<Item = PreferenceSystem> {
    let mut r = rng(seed, salt);
    (0..count).map(move |_| random_instance(&mut r, InstanceShape::default()))
}

fn popularity_equivalence(seed: u64) -> Result<Check> {
    let mut violations = 0;
    let mut checked = 0usize;
    for ps in instances(seed, 1, 1000) {
        let report = popular_set(&ps, DEFAULT_CAP)?;
        for m in enumerate_matchings(&ps, DEFAULT_CAP)? {
            checked += 1;
            if is_popular(&ps, &m)?.popular != report.is_popular(&m) {
                violations += 1;
            }
        }
    }
    Ok(Check::new(violations, format!("1000 instances, {checked} matchings")))
}

fn node_chain(seed: u64) -> Result<Check> {
    let mut violations = 0;
    for ps in instances(seed, 2, 500) {
        if !node_chain_holds(&popular_set(&ps, DEFAULT_CAP)?) {
            violations += 1;
        }
    }
    Ok(Check::new(violations, "500 instances".into()))
}

fn size_dichotomy(seed: u64) -> Result<Check> {
    let mut violations = 0;
    for ps in instances(seed, 3, 500) {
        let report = popular_set(&ps, DEFAULT_CAP)?;
        if report.stable.iter().any(|s| s.size() != report.min_popular_size) {
            violations += 1;
        }
        if two_level_gale_shapley(&ps).size() != report.max_popular_size {
            violations += 1;
        }
    }
    let ps = fixtures::i2x2();
    let report = popular_set(&ps, DEFAULT_CAP)?;
    if report.max_popular_size != 2 * report.min_popular_size {
        violations += 1;
    }
    Ok(Check::new(
        violations,
        format!(
            "500 instances, I_2x2 sizes {}/{}",
            report.min_popular_size, report.max_popular_size
        ),
    ))
}

fn edge_decompositions(seed: u64) -> Result<Check> {
    let mut violations = 0;
    for ps in instances(seed, 4, 500) {
        let report = popular_set(&ps, DEFAULT_CAP)?;
        let structure = PopularStructure::new(&ps);
        let in_some = |set: &[Matching]| EnumerationReport::edges_in_some(set);
        let avoided = |set: &[Matching]| EnumerationReport::edges_avoided_by_some(&ps, set);
        let union = |x: BTreeSet<_>, y: BTreeSet<_>| x.union(&y).copied().collect::<BTreeSet<_>>();
        if in_some(&report.popular) != union(in_some(&report.stable), in_some(&report.dominant)) {
            violations += 1;
        }
        if avoided(&report.popular) != union(avoided(&report.stable), avoided(&report.dominant)) {
            violations += 1;
        }
        for &e in ps.edges() {
            let c = structure.classify(e);
            let truth = [
                report.stable.iter().any(|m| m.contains(e)),
                report.dominant.iter().any(|m| m.contains(e)),
                report.popular.iter().any(|m| m.contains(e)),
                report.stable.iter().any(|m| !m.contains(e)),
                report.dominant.iter().any(|m| !m.contains(e)),
                report.popular.iter().any(|m| !m.contains(e)),
            ];
            let ours = [
                c.in_some_stable,
                c.in_some_dominant,
                c.in_some_popular,
                c.avoided_by_some_stable,
                c.avoided_by_some_dominant,
                c.avoided_by_some_popular,
            ];
            if truth != ours {
                violations += 1;
            }
        }
    }
    Ok(Check::new(violations, "500 instances".into()))
}

fn approximation(seed: u64) -> Result<Check> {
    let mut violations = 0;
    let mut worst: Option<BigRational> = None;
    let mut r = rng(seed, 5);
    for ps in instances(seed, 50, 100) {
        let report = popular_set(&ps, DEFAULT_CAP)?;
        for round in 0..200 {
            let w = random_weights(&mut r, &ps, 10);
            let opt = report.popular.iter().map(|m| w.total(&ps, m)).max().expect("popular matching");
            if round == 0 && mwp_exact(&ps, &w, SearchBudget::exponential())?.1 != opt {
                violations += 1;
            }
            let approx = mwp_half_approx(&ps, &w)?;
            if !report.is_popular(&approx.matching) || w.total(&ps, &approx.matching) != approx.value {
                violations += 1;
            }
            let two = BigRational::from_integer(2.into());
            if approx.value.clone() * two < opt {
                violations += 1;
            }
            if !opt.is_zero() {
                let ratio = approx.value / opt;
                if worst.as_ref().map_or(true, |x| ratio < *x) {
                    worst = Some(ratio);
                }
            }
        }
    }
    let ps = fixtures::i2x2();
    let unit = WeightMap::from_integers(&ps, &vec![1; ps.num_edges()])?;
    let approx = mwp_half_approx(&ps, &unit)?;
    if approx.value != mwp_exact(&ps, &unit, SearchBudget::exponential())?.1 {
        violations += 1;
    }
    let worst = worst.map_or("n/a".to_string(), |x| x.to_string());
    Ok(Check::new(violations, format!("20000 weight vectors, worst ratio {worst}")))
}

/// (x1 ∨ x2 ∨ x3) ∧ (¬x1 ∨ ¬x2 ∨ ¬x4) ∧ (x2 ∨ x4 ∨ x5).
pub fn three_clause_example() -> CnfFormula {
    CnfFormula::new(5, &[&[1, 2, 3], &[-1, -2, -4], &[2, 4, 5]]).expect("valid formula")
}

fn reduction_completeness() -> Result<Check> {
    let f = three_clause_example();
    let (ps, gm) = build_graph(&f)?;
    let m = assignment_to_matching(&ps, &gm, &[true, false, false, true, true])?;
    let has = |x: &str, y: &str| -> Result<bool> { Ok(m.contains(ps.edge_by_names(x, y)?)) };
    let mut violations = 0;
    for (x, y) in [("t", "u"), ("v", "w"), ("x", "y")] {
        violations += usize::from(!has(x, y)?);
    }
    for (x, y) in [("s", "t"), ("w", "x")] {
        violations += usize::from(has(x, y)?);
    }
    violations += usize::from(!is_popular(&ps, &m)?.popular);
    let lg = label_edges(&ps, &m)?;
    let plus: Vec<String> = lg.plus_plus_edges().iter().map(|&e| ps.edge_label(e)).collect();
    violations += usize::from(plus != ["w x"]);
    Ok(Check::new(violations, format!("(+,+) edges {plus:?}")))
}

fn reduction_soundness() -> Result<Check> {
    let budget = SearchBudget::exponential().with_max_edges(usize::MAX);
    let mut violations = 0;
    let mut parts = Vec::new();
    for (f, expected) in [
        (CnfFormula::new(1, &[&[1], &[-1]])?, false),
        (CnfFormula::new(2, &[&[1, 2], &[-1, -2]])?, true),
    ] {
        let start = Instant::now();
        let got = decide_sat(&f, budget)?;
        let elapsed = start.elapsed();
        if got != expected || brute_force_sat(&f).is_some() != expected || elapsed > Duration::from_secs(300) {
            violations += 1;
        }
        parts.push(format!("{f} -> {got} in {elapsed:.2?}"));
    }
    Ok(Check::new(violations, parts.join("; ")))
}

fn structural_properties() -> Result<Check> {
    let (ps, gm) = build_graph(&CnfFormula::new(1, &[&[1], &[-1]])?)?;
    let report = popular_set(&ps, DEFAULT_CAP)?;
    let edge = |x: &str, y: &str| ps.edge_by_names(x, y);
    let (st, tu, wx, xy) = (edge("s", "t")?, edge("t", "u")?, edge("w", "x")?, edge("x", "y")?);
    let (s, y) = (ps.require_vertex("s")?, ps.require_vertex("y")?);
    let consistency = gm.edges(&ps, &gm.consistency_edges)?;
    let evicted = gm.edges(&ps, &gm.evicted_edges)?;
    let mut violations = 0;
    let mut through_tu = 0;
    for m in &report.popular {
        let avoids = !m.contains(st) && !m.contains(wx);
        let chain = m.contains(tu) && m.contains(xy);
        let ends = !m.is_matched(s) && m.is_matched(y);
        if avoids != chain || chain != ends {
            violations += 1;
        }
        if !evicted.iter().any(|&e| m.contains(e)) && consistency.iter().any(|&e| m.contains(e)) {
            violations += 1;
        }
        if !m.contains(tu) {
            continue;
        }
        through_tu += 1;
        for name in gm.apexes_and_gateways() {
            let v = ps.require_vertex(&name)?;
            if m.partner(v) != Some(ps.prefs(v)[0]) {
                violations += 1;
            }
        }
        if consistency.iter().chain(&evicted).any(|&e| m.contains(e)) {
            violations += 1;
        }
        for g in &gm.gadgets {
            let t = gm.edges(&ps, &g.true_edges())?.iter().all(|&e| m.contains(e));
            let f = gm.edges(&ps, &g.false_edges())?.iter().all(|&e| m.contains(e));
            if t == f {
                violations += 1;
            }
        }
    }
    if through_tu == 0 {
        violations += 1;
    }
    Ok(Check::new(
        violations,
        format!("{} popular matchings, {through_tu} through tu", report.popular.len()),
    ))
}

fn stable_machinery(seed: u64) -> Result<Check> {
    let mut violations = 0;
    for ps in instances(seed, 9, 500) {
        let report = popular_set(&ps, DEFAULT_CAP)?;
        let ours: BTreeSet<Vec<usize>> = all_stable_matchings(&ps, DEFAULT_CAP)?
            .iter()
            .map(|m| m.encoding(&ps))
            .collect();
        let truth: BTreeSet<Vec<usize>> = report.stable.iter().map(|m| m.encoding(&ps)).collect();
        if ours != truth {
            violations += 1;
        }
    }
    let mut r = rng(seed, 90);
    for ps in instances(seed, 91, 200) {
        let stable = all_stable_matchings(&ps, DEFAULT_CAP)?;
        let w = random_weights(&mut r, &ps, 10);
        let best = stable.iter().map(|m| w.total(&ps, m)).max().expect("stable matching");
        let (m, value) = max_weight_stable(&ps, &w)?;
        if value != best || w.total(&ps, &m) != value || !stable.contains(&m) {
            violations += 1;
        }
    }
    Ok(Check::new(violations, "500 rotation sets, 200 weight vectors".into()))
}

/// 2-colors the graph from its edges alone, ignoring the declared sides.
pub fn two_colorable(ps: &PreferenceSystem) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; ps.num_vertices()];
    for start in ps.vertices() {
        if color[start.index()].is_some() {
            continue;
        }
        color[start.index()] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let c = color[v.index()].expect("colored when queued");
            for &w in ps.prefs(v) {
                match color[w.index()] {
                    None => {
                        color[w.index()] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(d) if d == c => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

fn bipartiteness(seed: u64) -> Result<Check> {
    let mut r = rng(seed, 10);
    let mut violations = 0;
    let mut vertices = 0;
    for _ in 0..100 {
        let f = normalize_monotone(&random_formula(&mut r, 5, 6, true))?;
        let (ps, _) = build_graph(&f)?;
        vertices += ps.num_vertices();
        if !two_colorable(&ps) {
            violations += 1;
        }
    }
    Ok(Check::new(violations, format!("100 formulas, {vertices} vertices")))
}
