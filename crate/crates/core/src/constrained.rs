//! Popular matchings with forced and forbidden vertices and edges.
//!
//! Polynomial cases go through stable matchings of G and of the levelled
//! instance G′. Everything else falls back to an exhaustive search that is
//! refused unless explicitly allowed.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::constraints::ConstraintSet;
use crate::dominant::{two_level_gale_shapley, DominantStructure};
use crate::error::{Error, Result};
use crate::instance::{Edge, PreferenceSystem, Side, VertexId};
use crate::matching::Matching;
use crate::popularity::is_popular_fast;
use crate::stable::{enumerate_rotations, gale_shapley, RotationPoset};
use crate::weights::{Weight, WeightMap};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeClassification {
    pub in_some_stable: bool,
    pub in_some_dominant: bool,
    pub in_some_popular: bool,
    pub avoided_by_some_stable: bool,
    pub avoided_by_some_dominant: bool,
    pub avoided_by_some_popular: bool,
}

/// Stable and dominant structure of one instance, built once and queried
/// many times.
#[derive(Clone, Debug)]
pub struct PopularStructure {
    pub stable: RotationPoset,
    pub dominant: DominantStructure,
}

impl PopularStructure {
    pub fn new(ps: &PreferenceSystem) -> Self {
        PopularStructure {
            stable: enumerate_rotations(ps),
            dominant: DominantStructure::new(ps),
        }
    }

    pub fn classify(&self, e: Edge) -> EdgeClassification {
        let in_some_stable = self.stable.is_stable_pair(e);
        let in_some_dominant = self.dominant.is_dominant_pair(e);
        let avoided_by_some_stable = self.stable.avoided_by_some(e);
        let avoided_by_some_dominant = self.dominant.avoided_by_some(e);
        EdgeClassification {
            in_some_stable,
            in_some_dominant,
            in_some_popular: in_some_stable || in_some_dominant,
            avoided_by_some_stable,
            avoided_by_some_dominant,
            avoided_by_some_popular: avoided_by_some_stable || avoided_by_some_dominant,
        }
    }
}

pub fn classify_edge(ps: &PreferenceSystem, e: Edge) -> Result<EdgeClassification> {
    if ps.edge_id(e).is_none() {
        return Err(Error::NonEdge(ps.name(e.a).to_string(), ps.name(e.b).to_string()));
    }
    Ok(PopularStructure::new(ps).classify(e))
}

/// Which branch produced an answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DispatchCase {
    Unconstrained,
    ForbiddenNodes,
    ForcedNodes,
    ForcedEdge,
    ForbiddenEdge,
    /// Decided from the node bounds V(S) ⊆ V(M) ⊆ V(D) alone.
    NodeBounds,
    /// The constraint is met by every popular matching.
    Vacuous,
    /// Met by a maximum-weight stable or dominant matching.
    WeightedShortcut,
    Exhaustive,
}

impl fmt::Display for DispatchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DispatchCase::Unconstrained => "unconstrained",
            DispatchCase::ForbiddenNodes => "forbidden-nodes",
            DispatchCase::ForcedNodes => "forced-nodes",
            DispatchCase::ForcedEdge => "forced-edge",
            DispatchCase::ForbiddenEdge => "forbidden-edge",
            DispatchCase::NodeBounds => "node-bounds",
            DispatchCase::Vacuous => "vacuous",
            DispatchCase::WeightedShortcut => "weighted-shortcut",
            DispatchCase::Exhaustive => "exhaustive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PmffeStatus {
    Found(Matching),
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmffeOutcome {
    pub status: PmffeStatus,
    pub case: DispatchCase,
}

impl PmffeOutcome {
    fn found(m: Matching, case: DispatchCase) -> Self {
        PmffeOutcome {
            status: PmffeStatus::Found(m),
            case,
        }
    }

    fn infeasible(case: DispatchCase) -> Self {
        PmffeOutcome {
            status: PmffeStatus::Infeasible,
            case,
        }
    }

    fn from_option(m: Option<Matching>, case: DispatchCase) -> Self {
        match m {
            Some(m) => PmffeOutcome::found(m, case),
            None => PmffeOutcome::infeasible(case),
        }
    }

    pub fn matching(&self) -> Option<&Matching> {
        match &self.status {
            PmffeStatus::Found(m) => Some(m),
            PmffeStatus::Infeasible => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.matching().is_some()
    }

    /// Whether the exponential search decided the answer.
    pub fn used_fallback(&self) -> bool {
        self.case == DispatchCase::Exhaustive
    }
}

/// Guard for the exhaustive fallback.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub allow_exponential: bool,
    /// Largest edge count the fallback will take on.
    pub max_edges: usize,
}

impl SearchBudget {
    pub const DEFAULT_MAX_EDGES: usize = 40;

    pub fn polynomial_only() -> Self {
        SearchBudget {
            allow_exponential: false,
            max_edges: Self::DEFAULT_MAX_EDGES,
        }
    }

    pub fn exponential() -> Self {
        SearchBudget {
            allow_exponential: true,
            max_edges: Self::DEFAULT_MAX_EDGES,
        }
    }

    pub fn with_max_edges(self, max_edges: usize) -> Self {
        SearchBudget { max_edges, ..self }
    }

    fn check(&self, ps: &PreferenceSystem) -> Result<()> {
        if !self.allow_exponential || ps.num_edges() > self.max_edges {
            let limit = if self.allow_exponential { self.max_edges } else { 0 };
            return Err(Error::HardCase {
                edges: ps.num_edges(),
                limit,
            });
        }
        Ok(())
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::polynomial_only()
    }
}

pub fn solve_pmffe(ps: &PreferenceSystem, cs: &ConstraintSet, budget: SearchBudget) -> Result<PmffeOutcome> {
    cs.validate(ps)?;
    let only_forbidden_nodes =
        cs.forced_nodes.is_empty() && cs.forced_edges.is_empty() && cs.forbidden_edges.is_empty();
    let only_forced_nodes =
        cs.forbidden_nodes.is_empty() && cs.forced_edges.is_empty() && cs.forbidden_edges.is_empty();

    if cs.is_empty() {
        return Ok(PmffeOutcome::found(gale_shapley(ps, Side::A), DispatchCase::Unconstrained));
    }
    if only_forbidden_nodes {
        // Every popular matching covers V(S), and a stable matching covers
        // nothing more.
        let s = gale_shapley(ps, Side::A);
        let ok = cs.forbidden_nodes.iter().all(|&v| !s.is_matched(v));
        return Ok(PmffeOutcome::from_option(ok.then_some(s), DispatchCase::ForbiddenNodes));
    }
    if only_forced_nodes {
        let d = two_level_gale_shapley(ps);
        let ok = cs.forced_nodes.iter().all(|&v| d.is_matched(v));
        return Ok(PmffeOutcome::from_option(ok.then_some(d), DispatchCase::ForcedNodes));
    }
    if cs.len() == 1 && cs.forced_edges.len() == 1 {
        let e = *cs.forced_edges.iter().next().expect("one edge");
        let structure = PopularStructure::new(ps);
        let m = structure
            .stable
            .stable_with(&[e], &[])
            .or_else(|| structure.dominant.dominant_with(ps, &[e], &[]));
        return Ok(PmffeOutcome::from_option(m, DispatchCase::ForcedEdge));
    }
    if cs.len() == 1 && cs.forbidden_edges.len() == 1 {
        let e = *cs.forbidden_edges.iter().next().expect("one edge");
        let structure = PopularStructure::new(ps);
        let m = structure
            .stable
            .stable_with(&[], &[e])
            .or_else(|| structure.dominant.dominant_with(ps, &[], &[e]));
        return Ok(PmffeOutcome::from_option(m, DispatchCase::ForbiddenEdge));
    }
    budget.check(ps)?;
    let m = exhaustive_search(ps, cs, &|_| true);
    Ok(PmffeOutcome::from_option(m, DispatchCase::Exhaustive))
}

/// Popular matching covering exactly `u`.
pub fn exclusive_popular_set(
    ps: &PreferenceSystem,
    u: &BTreeSet<VertexId>,
    budget: SearchBudget,
) -> Result<PmffeOutcome> {
    if let Some(v) = u.iter().find(|v| v.index() >= ps.num_vertices()) {
        return Err(Error::InvalidConstraints(format!("vertex id {} out of range", v.0)));
    }
    let s = gale_shapley(ps, Side::A);
    let d = two_level_gale_shapley(ps);
    let (low, high) = (s.covered(), d.covered());
    if !low.is_subset(u) || !u.is_subset(&high) {
        return Ok(PmffeOutcome::infeasible(DispatchCase::NodeBounds));
    }
    if *u == low {
        return Ok(PmffeOutcome::found(s, DispatchCase::NodeBounds));
    }
    if *u == high {
        return Ok(PmffeOutcome::found(d, DispatchCase::NodeBounds));
    }
    budget.check(ps)?;
    let mut cs = ConstraintSet::new();
    for v in ps.vertices() {
        if u.contains(&v) {
            cs.forced_nodes.insert(v);
        } else {
            cs.forbidden_nodes.insert(v);
        }
    }
    let m = exhaustive_search(ps, &cs, &|_| true);
    Ok(PmffeOutcome::from_option(m, DispatchCase::Exhaustive))
}

/// Popular matching using at most `q` edges of `f`.
pub fn bounded_forbidden(
    ps: &PreferenceSystem,
    f: &BTreeSet<Edge>,
    q: usize,
    budget: SearchBudget,
) -> Result<PmffeOutcome> {
    if let Some(&e) = f.iter().find(|&&e| ps.edge_id(e).is_none()) {
        return Err(Error::NonEdge(ps.name(e.a).to_string(), ps.name(e.b).to_string()));
    }
    if f.len() <= q {
        return Ok(PmffeOutcome::found(gale_shapley(ps, Side::A), DispatchCase::Vacuous));
    }
    if q == 0 && f.len() == 1 {
        let cs = ConstraintSet {
            forbidden_edges: f.clone(),
            ..ConstraintSet::default()
        };
        return solve_pmffe(ps, &cs, budget);
    }
    // Sound shortcut: the stable or dominant matching with fewest F-edges.
    let mut w = WeightMap::zero(ps);
    for &e in f {
        w.set(ps, e, Weight::from_integer((-1).into()));
    }
    let structure = PopularStructure::new(ps);
    let (s, _) = structure.stable.max_weight(ps, &w);
    let lifted = structure.dominant.levelled.lift_weights(ps, &w);
    let (d, _) = structure.dominant.poset.max_weight(&structure.dominant.levelled.gprime, &lifted);
    let d = structure.dominant.levelled.sigma(ps, &d);
    let count = |m: &Matching| f.iter().filter(|&&e| m.contains(e)).count();
    for m in [s, d] {
        if count(&m) <= q {
            return Ok(PmffeOutcome::found(m, DispatchCase::WeightedShortcut));
        }
    }
    budget.check(ps)?;
    let m = exhaustive_search(ps, &ConstraintSet::new(), &|m| count(m) <= q);
    Ok(PmffeOutcome::from_option(m, DispatchCase::Exhaustive))
}

/// Every popular matching, in the search order of the fallback: larger
/// first, then by edge-id encoding.
pub fn all_popular_matchings(ps: &PreferenceSystem, budget: SearchBudget) -> Result<Vec<Matching>> {
    budget.check(ps)?;
    let candidates = candidates(ps, &ConstraintSet::new());
    Ok(candidates
        .into_par_iter()
        .filter(|m| is_popular_fast(ps, m))
        .collect())
}

/// First popular matching, in search order, that satisfies `cs` and `extra`.
pub(crate) fn exhaustive_search(
    ps: &PreferenceSystem,
    cs: &ConstraintSet,
    extra: &(dyn Fn(&Matching) -> bool + Sync),
) -> Option<Matching> {
    candidates(ps, cs)
        .into_par_iter()
        .find_first(|m| extra(m) && is_popular_fast(ps, m))
}

/// Maximal matchings that could be popular and satisfy `cs`, sorted by size
/// (descending) and then by encoding.
fn candidates(ps: &PreferenceSystem, cs: &ConstraintSet) -> Vec<Matching> {
    let structure = PopularStructure::new(ps);
    let low = gale_shapley(ps, Side::A).covered();
    let high = two_level_gale_shapley(ps).covered();
    let n = ps.num_vertices();

    let mut must_cover = vec![false; n];
    let mut must_expose = vec![false; n];
    for v in ps.vertices() {
        must_cover[v.index()] = low.contains(&v) || cs.forced_nodes.contains(&v);
        must_expose[v.index()] = !high.contains(&v) || cs.forbidden_nodes.contains(&v);
    }
    for e in &cs.forced_edges {
        must_cover[e.a.index()] = true;
        must_cover[e.b.index()] = true;
    }
    // Only edges of some popular matching can appear, and edges that no
    // popular matching avoids must appear.
    let mut usable = vec![false; ps.num_edges()];
    let mut forced = cs.forced_edges.clone();
    for (id, &e) in ps.edges().iter().enumerate() {
        let c = structure.classify(e);
        usable[id] = c.in_some_popular && !cs.forbidden_edges.contains(&e);
        if !c.avoided_by_some_popular {
            forced.insert(e);
        }
    }

    let mut search = Search {
        ps,
        usable,
        must_cover,
        must_expose,
        partner: vec![None; n],
        out: Vec::new(),
    };
    for &e in &forced {
        let id = ps.edge_id(e).expect("edge");
        let (a, b) = (e.a.index(), e.b.index());
        if !search.usable[id]
            || search.must_expose[a]
            || search.must_expose[b]
            || search.partner[a].is_some()
            || search.partner[b].is_some()
        {
            return Vec::new();
        }
        search.partner[a] = Some(e.b);
        search.partner[b] = Some(e.a);
    }
    search.run(0);
    let mut out = search.out;
    out.sort_by_cached_key(|m| (std::cmp::Reverse(m.size()), m.encoding(ps)));
    out
}

struct Search<'a> {
    ps: &'a PreferenceSystem,
    usable: Vec<bool>,
    must_cover: Vec<bool>,
    must_expose: Vec<bool>,
    partner: Vec<Option<VertexId>>,
    out: Vec<Matching>,
}

impl Search<'_> {
    fn run(&mut self, i: usize) {
        let n = self.ps.num_vertices();
        if i == n {
            let maximal = self.ps.edges().iter().all(|e| {
                self.partner[e.a.index()].is_some() || self.partner[e.b.index()].is_some()
            });
            if maximal {
                self.out.push(Matching::from_partner_table(self.partner.clone()));
            }
            return;
        }
        let v = VertexId(i as u32);
        if self.partner[i].is_some() {
            self.run(i + 1);
            return;
        }
        if !self.must_cover[i] && self.can_stay_exposed(v) {
            self.run(i + 1);
        }
        if self.must_expose[i] {
            return;
        }
        for &w in self.ps.prefs(v) {
            let j = w.index();
            let id = self.ps.edge_id(self.ps.edge(v, w).expect("edge")).expect("edge");
            if j > i && self.partner[j].is_none() && !self.must_expose[j] && self.usable[id] {
                self.partner[i] = Some(w);
                self.partner[j] = Some(v);
                self.run(i + 1);
                self.partner[i] = None;
                self.partner[j] = None;
            }
        }
    }

    /// Leaving `v` exposed is hopeless if an earlier neighbor is exposed
    /// too: the result could not be maximal.
    fn can_stay_exposed(&self, v: VertexId) -> bool {
        self.ps
            .prefs(v)
            .iter()
            .all(|&w| w.index() > v.index() || self.partner[w.index()].is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn classification_examples() {
        let ps = fixtures::i2x2();
        let c = classify_edge(&ps, ps.edge_by_names("a2", "b1").unwrap()).unwrap();
        assert!(c.in_some_stable && !c.in_some_dominant && c.in_some_popular);
        assert!(c.avoided_by_some_dominant && c.avoided_by_some_popular);
        let c = classify_edge(&ps, ps.edge_by_names("a1", "b1").unwrap()).unwrap();
        assert!(!c.in_some_stable && c.in_some_dominant && c.in_some_popular);

        let single = fixtures::single_edge();
        let c = classify_edge(&single, single.edge_by_names("a", "b").unwrap()).unwrap();
        assert!(c.in_some_stable && c.in_some_dominant && c.in_some_popular);
        assert!(!c.avoided_by_some_stable && !c.avoided_by_some_dominant && !c.avoided_by_some_popular);
    }

    #[test]
    fn pmffe_examples() {
        let ps = fixtures::i2x2();
        let v = |n: &str| ps.vertex(n).unwrap();
        let budget = SearchBudget::default();

        let out = solve_pmffe(&ps, &ConstraintSet::new().force_node(v("a1")), budget).unwrap();
        assert_eq!(out.matching(), Some(&fixtures::i2x2_dominant(&ps)));
        assert_eq!(out.case, DispatchCase::ForcedNodes);

        let out = solve_pmffe(&ps, &ConstraintSet::new().forbid_node(v("b1")), budget).unwrap();
        assert_eq!(out.status, PmffeStatus::Infeasible);

        let a2b1 = ps.edge_by_names("a2", "b1").unwrap();
        let out = solve_pmffe(&ps, &ConstraintSet::new().forbid_edge(a2b1), budget).unwrap();
        assert_eq!(out.matching(), Some(&fixtures::i2x2_dominant(&ps)));
        assert_eq!(out.case, DispatchCase::ForbiddenEdge);

        let a1b1 = ps.edge_by_names("a1", "b1").unwrap();
        let out = solve_pmffe(&ps, &ConstraintSet::new().force_edge(a1b1), budget).unwrap();
        assert_eq!(out.matching(), Some(&fixtures::i2x2_dominant(&ps)));
    }

    #[test]
    fn hard_cases_need_permission() {
        let ps = fixtures::i2x2();
        let a1b1 = ps.edge_by_names("a1", "b1").unwrap();
        let a2b2 = ps.edge_by_names("a2", "b2").unwrap();
        let cs = ConstraintSet::new().force_edge(a1b1).forbid_edge(a2b2);
        assert_eq!(
            solve_pmffe(&ps, &cs, SearchBudget::default()),
            Err(Error::HardCase { edges: 3, limit: 0 })
        );
        let out = solve_pmffe(&ps, &cs, SearchBudget::exponential()).unwrap();
        assert_eq!(out.status, PmffeStatus::Infeasible);
        assert!(out.used_fallback());
        assert!(matches!(
            solve_pmffe(&ps, &cs, SearchBudget::exponential().with_max_edges(2)),
            Err(Error::HardCase { .. })
        ));
    }

    #[test]
    fn exclusive_examples() {
        let ps = fixtures::i2x2();
        let set = |names: &[&str]| names.iter().map(|n| ps.vertex(n).unwrap()).collect::<BTreeSet<_>>();
        let b = SearchBudget::default();
        let out = exclusive_popular_set(&ps, &set(&["a2", "b1"]), b).unwrap();
        assert_eq!(out.matching(), Some(&fixtures::i2x2_stable(&ps)));
        let out = exclusive_popular_set(&ps, &set(&["a1", "b1"]), b).unwrap();
        assert_eq!(out.status, PmffeStatus::Infeasible);
        let out = exclusive_popular_set(&ps, &set(&["a1", "a2", "b1", "b2"]), b).unwrap();
        assert_eq!(out.matching(), Some(&fixtures::i2x2_dominant(&ps)));
    }

    #[test]
    fn bounded_forbidden_examples() {
        let ps = fixtures::i2x2();
        let b = SearchBudget::default();
        let e = |u: &str, v: &str| ps.edge_by_names(u, v).unwrap();
        let out = bounded_forbidden(&ps, &[e("a2", "b1")].into_iter().collect(), 0, b).unwrap();
        assert_eq!(out.matching(), Some(&fixtures::i2x2_dominant(&ps)));
        let all: BTreeSet<Edge> = ps.edges().iter().copied().collect();
        assert!(bounded_forbidden(&ps, &all, 3, b).unwrap().is_found());
        let out = bounded_forbidden(&ps, &all, 0, SearchBudget::exponential()).unwrap();
        assert_eq!(out.status, PmffeStatus::Infeasible);
    }

    #[test]
    fn popular_listing() {
        let ps = fixtures::i2x2();
        let all = all_popular_matchings(&ps, SearchBudget::exponential()).unwrap();
        assert_eq!(all, vec![fixtures::i2x2_dominant(&ps), fixtures::i2x2_stable(&ps)]);
    }
}
