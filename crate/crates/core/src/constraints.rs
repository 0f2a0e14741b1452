use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instance::{Edge, PreferenceSystem, VertexId};
use crate::matching::Matching;

/// Forced and forbidden vertices and edges for a constrained popular
/// matching query.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    pub forced_nodes: BTreeSet<VertexId>,
    pub forbidden_nodes: BTreeSet<VertexId>,
    pub forced_edges: BTreeSet<Edge>,
    pub forbidden_edges: BTreeSet<Edge>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        ConstraintSet::default()
    }

    pub fn force_node(mut self, v: VertexId) -> Self {
        self.forced_nodes.insert(v);
        self
    }

    pub fn forbid_node(mut self, v: VertexId) -> Self {
        self.forbidden_nodes.insert(v);
        self
    }

    pub fn force_edge(mut self, e: Edge) -> Self {
        self.forced_edges.insert(e);
        self
    }

    pub fn forbid_edge(mut self, e: Edge) -> Self {
        self.forbidden_edges.insert(e);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// |U^in ∪ U^out ∪ F^in ∪ F^out|.
    pub fn len(&self) -> usize {
        self.forced_nodes.len()
            + self.forbidden_nodes.len()
            + self.forced_edges.len()
            + self.forbidden_edges.len()
    }

    pub fn validate(&self, ps: &PreferenceSystem) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConstraints(msg));
        for &v in self.forced_nodes.iter().chain(&self.forbidden_nodes) {
            if v.index() >= ps.num_vertices() {
                return bad(format!("vertex id {} out of range", v.0));
            }
        }
        for &e in self.forced_edges.iter().chain(&self.forbidden_edges) {
            if ps.edge_id(e).is_none() {
                return bad(format!("{} is not an edge", ps.edge_label(e)));
            }
        }
        if let Some(v) = self.forced_nodes.intersection(&self.forbidden_nodes).next() {
            return bad(format!("`{}` is both forced and forbidden", ps.name(*v)));
        }
        if let Some(e) = self.forced_edges.intersection(&self.forbidden_edges).next() {
            return bad(format!("{} is both forced and forbidden", ps.edge_label(*e)));
        }
        for &e in self.forced_edges.iter().chain(&self.forbidden_edges) {
            for v in [e.a, e.b] {
                if self.forced_nodes.contains(&v) || self.forbidden_nodes.contains(&v) {
                    return bad(format!(
                        "`{}` is constrained both as a node and as an endpoint of {}",
                        ps.name(v),
                        ps.edge_label(e)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_satisfied_by(&self, m: &Matching) -> bool {
        self.forced_nodes.iter().all(|&v| m.is_matched(v))
            && self.forbidden_nodes.iter().all(|&v| !m.is_matched(v))
            && self.forced_edges.iter().all(|&e| m.contains(e))
            && self.forbidden_edges.iter().all(|&e| !m.contains(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validation_rules() {
        let ps = fixtures::i2x2();
        let a1 = ps.vertex("a1").unwrap();
        let a2 = ps.vertex("a2").unwrap();
        let b1 = ps.vertex("b1").unwrap();
        let e = ps.edge_by_names("a1", "b1").unwrap();
        let f = ps.edge_by_names("a2", "b2").unwrap();
        assert!(ConstraintSet::new().force_node(a1).forbid_node(a1).validate(&ps).is_err());
        assert!(ConstraintSet::new().force_edge(e).forbid_edge(e).validate(&ps).is_err());
        assert!(ConstraintSet::new().force_edge(e).forbid_node(a1).validate(&ps).is_err());
        assert!(ConstraintSet::new().force_edge(f).forbid_node(a1).validate(&ps).is_ok());
        assert!(ConstraintSet::new().forbid_edge(e).force_node(b1).validate(&ps).is_err());
        assert!(ConstraintSet::new().forbid_edge(e).force_node(a2).validate(&ps).is_ok());
        let non_edge = Edge { a: a1, b: ps.vertex("b2").unwrap() };
        assert!(ConstraintSet::new().force_edge(non_edge).validate(&ps).is_err());
    }

    #[test]
    fn satisfaction() {
        let ps = fixtures::i2x2();
        let d = fixtures::i2x2_dominant(&ps);
        let s = fixtures::i2x2_stable(&ps);
        let cs = ConstraintSet::new().force_node(ps.vertex("a1").unwrap());
        assert!(cs.is_satisfied_by(&d));
        assert!(!cs.is_satisfied_by(&s));
        assert_eq!(cs.len(), 1);
    }
}
