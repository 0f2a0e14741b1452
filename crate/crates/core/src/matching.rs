use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instance::{Edge, PreferenceSystem, VertexId};

/// A set of vertex-disjoint edges of a preference system, stored as a
/// partner table indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    partner: Vec<Option<VertexId>>,
}

impl Matching {
    pub fn empty(ps: &PreferenceSystem) -> Self {
        Matching {
            partner: vec![None; ps.num_vertices()],
        }
    }

    pub fn from_edges<I>(ps: &PreferenceSystem, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut m = Matching::empty(ps);
        for e in edges {
            if ps.edge_id(e).is_none() {
                return Err(Error::NonEdge(
                    ps.name(e.a).to_string(),
                    ps.name(e.b).to_string(),
                ));
            }
            for v in [e.a, e.b] {
                if m.partner[v.index()].is_some() {
                    return Err(Error::InvalidMatching(format!(
                        "vertex `{}` is covered twice",
                        ps.name(v)
                    )));
                }
            }
            m.partner[e.a.index()] = Some(e.b);
            m.partner[e.b.index()] = Some(e.a);
        }
        Ok(m)
    }

    pub fn from_names<S: AsRef<str>>(ps: &PreferenceSystem, pairs: &[(S, S)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|(u, v)| ps.edge_by_names(u.as_ref(), v.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Matching::from_edges(ps, edges)
    }

    /// Parses the matching file format: one `u v` pair per line, `#` comments.
    pub fn parse(ps: &PreferenceSystem, text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            if words.len() != 2 {
                return Err(Error::Syntax {
                    line: lineno + 1,
                    message: "expected `u v`".to_string(),
                });
            }
            edges.push(ps.edge_by_names(words[0], words[1])?);
        }
        Matching::from_edges(ps, edges)
    }

    /// One `a b` line per edge, ordered by the A-side endpoint.
    pub fn render(&self, ps: &PreferenceSystem) -> String {
        let mut out = String::new();
        for e in self.edges() {
            out.push_str(&ps.edge_label(e));
            out.push('\n');
        }
        out
    }

    /// Checks that the matching belongs to `ps`.
    pub fn validate(&self, ps: &PreferenceSystem) -> Result<()> {
        if self.partner.len() != ps.num_vertices() {
            return Err(Error::InvalidMatching(format!(
                "built for {} vertices, instance has {}",
                self.partner.len(),
                ps.num_vertices()
            )));
        }
        for (i, p) in self.partner.iter().enumerate() {
            if let Some(p) = *p {
                let v = VertexId(i as u32);
                if self.partner.get(p.index()).copied().flatten() != Some(v)
                    || ps.edge(v, p).is_none()
                {
                    return Err(Error::InvalidMatching(format!(
                        "`{}` is not a valid partner of `{}`",
                        ps.name(p),
                        ps.name(v)
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn partner(&self, v: VertexId) -> Option<VertexId> {
        self.partner[v.index()]
    }

    #[inline]
    pub fn is_matched(&self, v: VertexId) -> bool {
        self.partner[v.index()].is_some()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.partner[e.a.index()] == Some(e.b)
    }

    pub fn size(&self) -> usize {
        self.partner.iter().filter(|p| p.is_some()).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.partner.iter().all(Option::is_none)
    }

    pub fn num_vertices(&self) -> usize {
        self.partner.len()
    }

    /// Matched edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (i, p) in self.partner.iter().enumerate() {
            if let Some(p) = *p {
                // A ids precede B ids, so the lower id is the A endpoint.
                if (i as u32) < p.0 {
                    out.push(Edge {
                        a: VertexId(i as u32),
                        b: p,
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// V(M): the covered vertices.
    pub fn covered(&self) -> BTreeSet<VertexId> {
        self.partner
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_some())
            .map(|(i, _)| VertexId(i as u32))
            .collect()
    }

    /// Sorted edge ids; the lexicographic encoding used for deterministic
    /// tie-breaks.
    pub fn encoding(&self, ps: &PreferenceSystem) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .edges()
            .into_iter()
            .filter_map(|e| ps.edge_id(e))
            .collect();
        ids.sort_unstable();
        ids
    }

    /// Adds `e`, assuming both endpoints are currently exposed.
    pub(crate) fn insert(&mut self, e: Edge) {
        debug_assert!(self.partner[e.a.index()].is_none() && self.partner[e.b.index()].is_none());
        self.partner[e.a.index()] = Some(e.b);
        self.partner[e.b.index()] = Some(e.a);
    }

    pub(crate) fn remove(&mut self, e: Edge) {
        debug_assert!(self.contains(e));
        self.partner[e.a.index()] = None;
        self.partner[e.b.index()] = None;
    }

    /// Unmatches `v` and its partner, if any.
    pub(crate) fn expose(&mut self, v: VertexId) {
        if let Some(p) = self.partner[v.index()].take() {
            self.partner[p.index()] = None;
        }
    }

    pub(crate) fn from_partner_table(partner: Vec<Option<VertexId>>) -> Self {
        Matching { partner }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_and_render_round_trip() {
        let ps = fixtures::i2x2();
        let m = Matching::parse(&ps, "b2 a2\n# comment\na1 b1\n").unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.render(&ps), "a1 b1\na2 b2\n");
        assert_eq!(Matching::parse(&ps, &m.render(&ps)).unwrap(), m);
    }

    #[test]
    fn rejects_shared_vertices_and_non_edges() {
        let ps = fixtures::i2x2();
        assert!(matches!(
            Matching::parse(&ps, "a1 b1\na2 b1\n"),
            Err(Error::InvalidMatching(_))
        ));
        assert!(matches!(
            Matching::parse(&ps, "a1 b2\n"),
            Err(Error::NonEdge(..))
        ));
        assert!(matches!(
            Matching::parse(&ps, "a1\n"),
            Err(Error::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn validate_rejects_foreign_matchings() {
        let small = fixtures::single_edge();
        let big = fixtures::i2x2();
        let m = Matching::empty(&small);
        assert!(m.validate(&big).is_err());
        assert!(m.validate(&small).is_ok());
    }

    #[test]
    fn covered_set_and_queries() {
        let ps = fixtures::i2x2();
        let s = fixtures::i2x2_stable(&ps);
        let a2 = ps.vertex("a2").unwrap();
        let b1 = ps.vertex("b1").unwrap();
        assert_eq!(s.covered(), [a2, b1].into_iter().collect());
        assert_eq!(s.partner(a2), Some(b1));
        assert!(!s.is_matched(ps.vertex("a1").unwrap()));
    }
}
