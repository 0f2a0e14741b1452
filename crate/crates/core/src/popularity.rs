//! Vote labels, the graph G_M, and popularity / dominance verification.
//!
//! A matching M is popular iff G_M (the graph without (−,−) edges) has no
//! M-alternating cycle through a (+,+) edge, no M-alternating path through
//! two (+,+) edges, and no M-alternating path from an exposed vertex through
//! a (+,+) edge.
//!
//! All three conditions are decided by a breadth-first search over states
//! (vertex, parity), where the parity says whether the next edge of the walk
//! must be a non-matching G_M edge ([`Parity::Even`]) or the matching edge
//! ([`Parity::Odd`]). In a bipartite graph every vertex is always entered the
//! same way along such a walk, so cutting out repeated vertices turns any
//! alternating walk into an alternating path with the same end edges; a
//! (+,+) edge lost in the process closes an alternating cycle through it.
//! Reachability is therefore exact, and the witnesses reported are simple
//! paths or cycles.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{Edge, PreferenceSystem, Side, VertexId};
use crate::matching::Matching;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// The vote label of a non-matching edge, oriented by the caller: the first
/// sign belongs to the first endpoint asked about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

impl EdgeLabel {
    pub fn from_signs(first: Sign, second: Sign) -> Self {
        match (first, second) {
            (Sign::Plus, Sign::Plus) => EdgeLabel::PlusPlus,
            (Sign::Plus, Sign::Minus) => EdgeLabel::PlusMinus,
            (Sign::Minus, Sign::Plus) => EdgeLabel::MinusPlus,
            (Sign::Minus, Sign::Minus) => EdgeLabel::MinusMinus,
        }
    }

    pub fn signs(self) -> (Sign, Sign) {
        match self {
            EdgeLabel::PlusPlus => (Sign::Plus, Sign::Plus),
            EdgeLabel::PlusMinus => (Sign::Plus, Sign::Minus),
            EdgeLabel::MinusPlus => (Sign::Minus, Sign::Plus),
            EdgeLabel::MinusMinus => (Sign::Minus, Sign::Minus),
        }
    }

    pub fn reversed(self) -> Self {
        let (x, y) = self.signs();
        EdgeLabel::from_signs(y, x)
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.signs();
        write!(f, "({},{})", x.symbol(), y.symbol())
    }
}

/// A preference system together with a matching and the labels it induces.
#[derive(Clone, Debug)]
pub struct LabeledGraph<'a> {
    ps: &'a PreferenceSystem,
    matching: Matching,
    // Per edge id: (sign of the A endpoint, sign of the B endpoint); `None`
    // on matching edges.
    signs: Vec<Option<(Sign, Sign)>>,
}

fn sign_of(ps: &PreferenceSystem, m: &Matching, v: VertexId, other: VertexId) -> Sign {
    if ps.prefers(v, Some(other), m.partner(v)) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Labels every non-matching edge of `ps` with respect to `m`.
pub fn label_edges<'a>(ps: &'a PreferenceSystem, m: &Matching) -> Result<LabeledGraph<'a>> {
    m.validate(ps)?;
    let signs = ps
        .edges()
        .iter()
        .map(|&e| {
            if m.contains(e) {
                None
            } else {
                Some((sign_of(ps, m, e.a, e.b), sign_of(ps, m, e.b, e.a)))
            }
        })
        .collect();
    Ok(LabeledGraph {
        ps,
        matching: m.clone(),
        signs,
    })
}

impl<'a> LabeledGraph<'a> {
    pub fn instance(&self) -> &'a PreferenceSystem {
        self.ps
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    /// Label of `uv` oriented from `u`; `None` for matching edges and
    /// non-edges.
    pub fn label(&self, u: VertexId, v: VertexId) -> Option<EdgeLabel> {
        let e = self.ps.edge(u, v)?;
        let (sa, sb) = self.signs[self.ps.edge_id(e)?]?;
        Some(if u == e.a {
            EdgeLabel::from_signs(sa, sb)
        } else {
            EdgeLabel::from_signs(sb, sa)
        })
    }

    pub fn label_by_names(&self, u: &str, v: &str) -> Result<Option<EdgeLabel>> {
        let (u, v) = (self.ps.require_vertex(u)?, self.ps.require_vertex(v)?);
        if self.ps.edge(u, v).is_none() {
            return Err(Error::NonEdge(
                self.ps.name(u).to_string(),
                self.ps.name(v).to_string(),
            ));
        }
        Ok(self.label(u, v))
    }

    fn edge_signs(&self, e: Edge) -> Option<(Sign, Sign)> {
        self.signs[self.ps.edge_id(e).expect("edge of this instance")]
    }

    /// Membership in G_M: matching edges and every edge not labeled (−,−).
    pub fn in_gm(&self, e: Edge) -> bool {
        match self.edge_signs(e) {
            None => true,
            Some(s) => s != (Sign::Minus, Sign::Minus),
        }
    }

    pub fn is_plus_plus(&self, e: Edge) -> bool {
        self.edge_signs(e) == Some((Sign::Plus, Sign::Plus))
    }

    pub fn gm_edges(&self) -> Vec<Edge> {
        self.ps
            .edges()
            .iter()
            .copied()
            .filter(|&e| self.in_gm(e))
            .collect()
    }

    pub fn plus_plus_edges(&self) -> Vec<Edge> {
        self.ps
            .edges()
            .iter()
            .copied()
            .filter(|&e| self.is_plus_plus(e))
            .collect()
    }

    fn exposed(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ps.vertices().filter(|&v| !self.matching.is_matched(v))
    }

    /// Non-matching G_M neighbors of `v`, in `v`'s preference order.
    fn free_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let p = self.matching.partner(v);
        self.ps.prefs(v).iter().copied().filter(move |&w| {
            Some(w) != p && self.in_gm(self.ps.edge(v, w).expect("listed neighbor"))
        })
    }
}

/// Whether the next edge of an alternating walk is a non-matching G_M edge
/// (`Even`) or the matching edge (`Odd`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

struct Search {
    visited: Vec<bool>,
    parent: Vec<Option<usize>>,
    order: Vec<usize>,
}

fn state(v: VertexId, p: Parity) -> usize {
    v.index() * 2 + usize::from(p == Parity::Odd)
}

fn unstate(s: usize) -> (VertexId, Parity) {
    let p = if s % 2 == 0 { Parity::Even } else { Parity::Odd };
    (VertexId((s / 2) as u32), p)
}

impl Search {
    fn run(lg: &LabeledGraph<'_>, starts: impl IntoIterator<Item = (VertexId, Parity)>) -> Search {
        let n = lg.ps.num_vertices() * 2;
        let mut s = Search {
            visited: vec![false; n],
            parent: vec![None; n],
            order: Vec::new(),
        };
        let mut queue = VecDeque::new();
        for (v, p) in starts {
            let id = state(v, p);
            if !s.visited[id] {
                s.visited[id] = true;
                s.order.push(id);
                queue.push_back(id);
            }
        }
        while let Some(cur) = queue.pop_front() {
            let (v, p) = unstate(cur);
            let mut push = |next: usize, s: &mut Search| {
                if !s.visited[next] {
                    s.visited[next] = true;
                    s.parent[next] = Some(cur);
                    s.order.push(next);
                    queue.push_back(next);
                }
            };
            match p {
                Parity::Even => {
                    for w in lg.free_neighbors(v) {
                        push(state(w, Parity::Odd), &mut s);
                    }
                }
                Parity::Odd => {
                    if let Some(w) = lg.matching.partner(v) {
                        push(state(w, Parity::Even), &mut s);
                    }
                }
            }
        }
        s
    }

    /// Vertices from the start state down to `target`.
    fn path_to(&self, target: usize) -> Vec<VertexId> {
        let mut out = vec![unstate(target).0];
        let mut cur = target;
        while let Some(p) = self.parent[cur] {
            out.push(unstate(p).0);
            cur = p;
        }
        out.reverse();
        out
    }
}

/// States reachable by alternating walks in G_M that start at an exposed
/// vertex of `sources` with a non-matching edge. Non-exposed sources are
/// ignored; the start states themselves are not reported.
pub fn alternating_reachability(
    lg: &LabeledGraph<'_>,
    sources: &BTreeSet<VertexId>,
) -> BTreeSet<(VertexId, Parity)> {
    let starts: Vec<_> = sources
        .iter()
        .copied()
        .filter(|&v| !lg.matching.is_matched(v))
        .map(|v| (v, Parity::Even))
        .collect();
    let start_ids: BTreeSet<usize> = starts.iter().map(|&(v, p)| state(v, p)).collect();
    let search = Search::run(lg, starts);
    search
        .order
        .iter()
        .filter(|id| !start_ids.contains(id))
        .map(|&id| unstate(id))
        .collect()
}

/// Which forbidden structure a witness exhibits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// (i) an alternating cycle through a (+,+) edge.
    CycleWithPlusPlus,
    /// (ii) an alternating path through two distinct (+,+) edges.
    PathWithTwoPlusPlus,
    /// (iii) an alternating path from an exposed vertex through a (+,+) edge.
    ExposedPathWithPlusPlus,
}

impl Violation {
    pub fn tag(self) -> &'static str {
        match self {
            Violation::CycleWithPlusPlus => "(i)",
            Violation::PathWithTwoPlusPlus => "(ii)",
            Violation::ExposedPathWithPlusPlus => "(iii)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub violation: Violation,
    /// Path vertices in order; for a cycle the closing edge joins the last
    /// vertex back to the first.
    pub vertices: Vec<VertexId>,
    pub plus_plus: Vec<Edge>,
}

impl Witness {
    pub fn is_cycle(&self) -> bool {
        self.violation == Violation::CycleWithPlusPlus
    }

    /// Consecutive vertex pairs, including the closing pair of a cycle.
    pub fn steps(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self.vertices.windows(2).map(|w| (w[0], w[1])).collect();
        if self.is_cycle() && self.vertices.len() > 1 {
            out.push((*self.vertices.last().unwrap(), self.vertices[0]));
        }
        out
    }

    /// Whitespace-separated walk; cycles repeat their first vertex.
    pub fn render(&self, ps: &PreferenceSystem) -> String {
        let mut names: Vec<&str> = self.vertices.iter().map(|&v| ps.name(v)).collect();
        if self.is_cycle() {
            names.push(ps.name(self.vertices[0]));
        }
        names.join(" ")
    }

    /// Re-checks the witness edge by edge against `lg`: it is a simple
    /// M-alternating path or cycle inside G_M containing the claimed (+,+)
    /// edges, and a condition-(iii) path starts at an exposed vertex.
    pub fn replay(&self, lg: &LabeledGraph<'_>) -> bool {
        let ps = lg.ps;
        let m = &lg.matching;
        let distinct: BTreeSet<_> = self.vertices.iter().collect();
        if distinct.len() != self.vertices.len() || self.vertices.len() < 2 {
            return false;
        }
        let steps = self.steps();
        let mut edges = Vec::with_capacity(steps.len());
        for &(u, v) in &steps {
            match ps.edge(u, v) {
                Some(e) if lg.in_gm(e) => edges.push(e),
                _ => return false,
            }
        }
        let alternating = edges.windows(2).all(|w| m.contains(w[0]) != m.contains(w[1]));
        if !alternating {
            return false;
        }
        if self.is_cycle() && (edges.len() % 2 != 0 || m.contains(edges[0]) == m.contains(*edges.last().unwrap())) {
            return false;
        }
        let claimed_ok = self
            .plus_plus
            .iter()
            .all(|e| lg.is_plus_plus(*e) && edges.contains(e));
        let count_ok = match self.violation {
            Violation::CycleWithPlusPlus => !self.plus_plus.is_empty(),
            Violation::PathWithTwoPlusPlus => {
                self.plus_plus.len() >= 2 && self.plus_plus[0] != self.plus_plus[1]
            }
            Violation::ExposedPathWithPlusPlus => {
                !self.plus_plus.is_empty() && !m.is_matched(self.vertices[0])
            }
        };
        claimed_ok && count_ok
    }
}

/// Switches `m` along the witness: every witness vertex drops its current
/// partner and the non-matching witness edges are added.
pub fn flip_along(ps: &PreferenceSystem, m: &Matching, w: &Witness) -> Matching {
    let mut out = m.clone();
    for &v in &w.vertices {
        out.expose(v);
    }
    for (u, v) in w.steps() {
        let e = ps.edge(u, v).expect("witness edge");
        if !m.contains(e) {
            out.insert(e);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopularityCertificate {
    pub popular: bool,
    pub witness: Option<Witness>,
}

pub fn is_popular(ps: &PreferenceSystem, m: &Matching) -> Result<PopularityCertificate> {
    let lg = label_edges(ps, m)?;
    Ok(check_labeled(&lg))
}

/// Popularity verdict without building a witness.
pub(crate) fn is_popular_fast(ps: &PreferenceSystem, m: &Matching) -> bool {
    let lg = label_edges(ps, m).expect("matching of this instance");
    check_labeled(&lg).popular
}

fn plus_plus_partners(lg: &LabeledGraph<'_>, x: VertexId) -> Option<VertexId> {
    lg.free_neighbors(x)
        .find(|&y| lg.is_plus_plus(lg.ps.edge(x, y).expect("neighbor")))
}

fn check_labeled(lg: &LabeledGraph<'_>) -> PopularityCertificate {
    let ps = lg.ps;
    let pp = lg.plus_plus_edges();
    if pp.is_empty() {
        return PopularityCertificate {
            popular: true,
            witness: None,
        };
    }

    // (iii): walk from an exposed vertex to the tail of a (+,+) edge.
    let search = Search::run(lg, lg.exposed().map(|v| (v, Parity::Even)));
    for &id in &search.order {
        let (x, p) = unstate(id);
        if p != Parity::Even {
            continue;
        }
        if let Some(y) = plus_plus_partners(lg, x) {
            let path = search.path_to(id);
            let e = ps.edge(x, y).expect("edge");
            return PopularityCertificate {
                popular: false,
                witness: Some(close_path(path, y, vec![e], Violation::ExposedPathWithPlusPlus)),
            };
        }
    }

    // (i)/(ii): after crossing a (+,+) edge from A to B, reach the A-side
    // tail of another (or the same) (+,+) edge.
    let mut entry: Vec<Option<VertexId>> = vec![None; ps.num_vertices()];
    for e in &pp {
        entry[e.b.index()].get_or_insert(e.a);
    }
    let starts = pp.iter().map(|e| (e.b, Parity::Odd));
    let search = Search::run(lg, starts);
    for &id in &search.order {
        let (x, p) = unstate(id);
        if p != Parity::Even || ps.side(x) != Side::A {
            continue;
        }
        let Some(y) = plus_plus_partners(lg, x) else {
            continue;
        };
        let inner = search.path_to(id);
        let first_b = inner[0];
        let first_a = entry[first_b.index()].expect("start of a (+,+) edge");
        let first = ps.edge(first_a, first_b).expect("edge");
        let second = ps.edge(x, y).expect("edge");
        // Closing back onto the first edge's tail gives a cycle.
        if let Some(pos) = inner.iter().position(|&v| v == first_a) {
            let mut cycle = vec![first_a];
            cycle.extend_from_slice(&inner[..pos]);
            return PopularityCertificate {
                popular: false,
                witness: Some(Witness {
                    violation: Violation::CycleWithPlusPlus,
                    vertices: cycle,
                    plus_plus: vec![first],
                }),
            };
        }
        let mut path = vec![first_a];
        path.extend(inner);
        return PopularityCertificate {
            popular: false,
            witness: Some(close_path(path, y, vec![first, second], Violation::PathWithTwoPlusPlus)),
        };
    }

    PopularityCertificate {
        popular: true,
        witness: None,
    }
}

/// Appends `y` to a simple alternating `path` ending at the tail of the
/// (+,+) edge (last, y). If `y` already lies on the path the result is the
/// alternating cycle from `y` around to the new edge.
fn close_path(path: Vec<VertexId>, y: VertexId, plus_plus: Vec<Edge>, violation: Violation) -> Witness {
    let closing = *plus_plus.last().expect("at least one edge");
    if let Some(pos) = path.iter().position(|&v| v == y) {
        return Witness {
            violation: Violation::CycleWithPlusPlus,
            vertices: path[pos..].to_vec(),
            plus_plus: vec![closing],
        };
    }
    let mut vertices = path;
    vertices.push(y);
    Witness {
        violation,
        vertices,
        plus_plus,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceCertificate {
    pub dominant: bool,
    /// An M-augmenting path inside G_M, from its A-side end.
    pub augmenting_path: Option<Vec<VertexId>>,
}

/// Dominance of a popular matching: no M-augmenting path in G_M. Fails with
/// [`Error::NotPopular`] when `m` is not popular.
pub fn is_dominant(ps: &PreferenceSystem, m: &Matching) -> Result<DominanceCertificate> {
    let lg = label_edges(ps, m)?;
    if !check_labeled(&lg).popular {
        return Err(Error::NotPopular);
    }
    Ok(augmenting_path(&lg))
}

fn augmenting_path(lg: &LabeledGraph<'_>) -> DominanceCertificate {
    let sources = lg
        .exposed()
        .filter(|&v| lg.ps.side(v) == Side::A)
        .map(|v| (v, Parity::Even));
    let search = Search::run(lg, sources);
    for &id in &search.order {
        let (x, p) = unstate(id);
        if p == Parity::Odd && !lg.matching.is_matched(x) {
            return DominanceCertificate {
                dominant: false,
                augmenting_path: Some(search.path_to(id)),
            };
        }
    }
    DominanceCertificate {
        dominant: true,
        augmenting_path: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::votes::margin;

    fn v(ps: &PreferenceSystem, name: &str) -> VertexId {
        ps.vertex(name).unwrap()
    }

    #[test]
    fn labels_on_i2x2_stable() {
        let ps = fixtures::i2x2();
        let lg = label_edges(&ps, &fixtures::i2x2_stable(&ps)).unwrap();
        assert_eq!(lg.label_by_names("a1", "b1").unwrap(), Some(EdgeLabel::PlusMinus));
        assert_eq!(lg.label_by_names("a2", "b2").unwrap(), Some(EdgeLabel::MinusPlus));
        assert_eq!(lg.label_by_names("b2", "a2").unwrap(), Some(EdgeLabel::PlusMinus));
        assert_eq!(lg.label_by_names("a2", "b1").unwrap(), None);
        assert!(lg.label_by_names("a1", "b2").is_err());
        assert_eq!(lg.gm_edges().len(), 3);
    }

    #[test]
    fn labels_on_i2x2_dominant() {
        // a2 prefers b1 to b2; b1 prefers a2 to a1: the edge is (+,+).
        let ps = fixtures::i2x2();
        let lg = label_edges(&ps, &fixtures::i2x2_dominant(&ps)).unwrap();
        assert_eq!(lg.label_by_names("a2", "b1").unwrap(), Some(EdgeLabel::PlusPlus));
    }

    #[test]
    fn single_edge_labels() {
        let ps = fixtures::single_edge();
        let lg = label_edges(&ps, &Matching::empty(&ps)).unwrap();
        assert_eq!(lg.label_by_names("a", "b").unwrap(), Some(EdgeLabel::PlusPlus));
    }

    #[test]
    fn minus_minus_edges_leave_gm() {
        // In I_rot with {a1b1, a2b2} every vertex holds its favorite on the A
        // side, so a1b2 and a2b1 are (−,+) and stay; with the other stable
        // matching, the B side is happy and the A side is not.
        let ps = fixtures::i_rot();
        let m = Matching::from_names(&ps, &[("a1", "b1"), ("a2", "b2")]).unwrap();
        let lg = label_edges(&ps, &m).unwrap();
        assert_eq!(lg.label_by_names("a1", "b2").unwrap(), Some(EdgeLabel::MinusPlus));
        let p3 = fixtures::p3();
        let m = Matching::from_names(&p3, &[("a1", "b1")]).unwrap();
        let lg = label_edges(&p3, &m).unwrap();
        assert_eq!(lg.label_by_names("a2", "b1").unwrap(), Some(EdgeLabel::PlusMinus));
        assert!(lg.in_gm(p3.edge_by_names("a2", "b1").unwrap()));
    }

    #[test]
    fn popular_verdicts_on_fixtures() {
        let ps = fixtures::single_edge();
        let ab = Matching::from_names(&ps, &[("a", "b")]).unwrap();
        assert!(is_popular(&ps, &ab).unwrap().popular);

        let cert = is_popular(&ps, &Matching::empty(&ps)).unwrap();
        assert!(!cert.popular);
        let w = cert.witness.unwrap();
        assert_eq!(w.violation, Violation::ExposedPathWithPlusPlus);
        assert_eq!(w.render(&ps), "a b");

        let ps = fixtures::i2x2();
        let m = Matching::from_names(&ps, &[("a1", "b1")]).unwrap();
        let cert = is_popular(&ps, &m).unwrap();
        assert!(!cert.popular);
        let w = cert.witness.unwrap();
        assert_eq!(w.violation, Violation::ExposedPathWithPlusPlus);
        assert_eq!(w.vertices[0], v(&ps, "a2"));
        assert!(w.plus_plus.contains(&ps.edge_by_names("a2", "b1").unwrap()));
    }

    #[test]
    fn witnesses_replay_and_flip_to_a_better_matching() {
        let ps = fixtures::i2x2();
        let m = Matching::from_names(&ps, &[("a1", "b1")]).unwrap();
        let cert = is_popular(&ps, &m).unwrap();
        let w = cert.witness.unwrap();
        let lg = label_edges(&ps, &m).unwrap();
        assert!(w.replay(&lg));
        let better = flip_along(&ps, &m, &w);
        assert!(margin(&ps, &better, &m).unwrap() > 0);
    }

    #[test]
    fn dominance_on_fixtures() {
        let ps = fixtures::i2x2();
        let d = is_dominant(&ps, &fixtures::i2x2_dominant(&ps)).unwrap();
        assert!(d.dominant);
        let s = is_dominant(&ps, &fixtures::i2x2_stable(&ps)).unwrap();
        assert!(!s.dominant);
        let names: Vec<&str> = s
            .augmenting_path
            .unwrap()
            .iter()
            .map(|&x| ps.name(x))
            .collect();
        assert_eq!(names, ["a1", "b1", "a2", "b2"]);

        let single = fixtures::single_edge();
        let ab = Matching::from_names(&single, &[("a", "b")]).unwrap();
        assert!(is_dominant(&single, &ab).unwrap().dominant);

        let not_popular = Matching::from_names(&ps, &[("a1", "b1")]).unwrap();
        assert_eq!(is_dominant(&ps, &not_popular), Err(Error::NotPopular));
    }

    #[test]
    fn reachability_on_i2x2_stable() {
        let ps = fixtures::i2x2();
        let lg = label_edges(&ps, &fixtures::i2x2_stable(&ps)).unwrap();
        let reached = alternating_reachability(&lg, &[v(&ps, "a1")].into_iter().collect());
        let expected: BTreeSet<_> = [
            (v(&ps, "b1"), Parity::Odd),
            (v(&ps, "a2"), Parity::Even),
            (v(&ps, "b2"), Parity::Odd),
        ]
        .into_iter()
        .collect();
        assert_eq!(reached, expected);
        assert!(alternating_reachability(&lg, &BTreeSet::new()).is_empty());

        let single = fixtures::single_edge();
        let ab = Matching::from_names(&single, &[("a", "b")]).unwrap();
        let lg = label_edges(&single, &ab).unwrap();
        assert!(alternating_reachability(&lg, &[v(&single, "a")].into_iter().collect()).is_empty());
    }
}
