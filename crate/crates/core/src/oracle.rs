//! Exhaustive ground truth for desk-scale instances.
//!
//! Everything here works straight from the definitions: φ comparisons
//! against every other matching, blocking-pair scans, and the defeat
//! relation. Nothing in this module calls into the polynomial algorithms it
//! is used to check.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{PreferenceSystem, VertexId};
use crate::matching::Matching;
use crate::votes::{defeats_unchecked, margin_unchecked};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Every matching of `ps` exactly once, ordered by the inclusion bitmask
/// over the sorted edge list (bit i = edge i).
pub fn enumerate_matchings(ps: &PreferenceSystem, cap: usize) -> Result<Vec<Matching>> {
    let edges = ps.edges();
    let mut out = Vec::new();
    let mut current = Matching::empty(ps);
    // Deciding the highest edge first, exclusion before inclusion, visits
    // masks in increasing numeric order.
    fn rec(
        i: usize,
        edges: &[crate::instance::Edge],
        current: &mut Matching,
        out: &mut Vec<Matching>,
        cap: usize,
    ) -> Result<()> {
        if i == 0 {
            if out.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(current.clone());
            return Ok(());
        }
        let e = edges[i - 1];
        rec(i - 1, edges, current, out, cap)?;
        if !current.is_matched(e.a) && !current.is_matched(e.b) {
            current.insert(e);
            rec(i - 1, edges, current, out, cap)?;
            current.remove(e);
        }
        Ok(())
    }
    rec(edges.len(), edges, &mut current, &mut out, cap)?;
    Ok(out)
}

/// No edge joins two exposed vertices.
pub fn is_maximal(ps: &PreferenceSystem, m: &Matching) -> bool {
    ps.edges()
        .iter()
        .all(|e| m.is_matched(e.a) || m.is_matched(e.b))
}

/// Edges uv ∉ M where u and v each prefer the other to their M-partner.
pub fn blocking_pairs(ps: &PreferenceSystem, m: &Matching) -> Vec<crate::instance::Edge> {
    ps.edges()
        .iter()
        .copied()
        .filter(|e| {
            !m.contains(*e)
                && ps.prefers(e.a, Some(e.b), m.partner(e.a))
                && ps.prefers(e.b, Some(e.a), m.partner(e.b))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub matching_count: usize,
    pub popular: Vec<Matching>,
    pub stable: Vec<Matching>,
    pub dominant: Vec<Matching>,
    pub min_popular_size: usize,
    pub max_popular_size: usize,
    popular_set: HashSet<Matching>,
}

impl EnumerationReport {
    pub fn is_popular(&self, m: &Matching) -> bool {
        self.popular_set.contains(m)
    }

    /// Checks stable ⊆ popular, dominant ⊆ popular, and the size claims.
    pub fn is_consistent(&self) -> bool {
        let dominant_ok = self
            .dominant
            .iter()
            .all(|d| self.is_popular(d) && d.size() == self.max_popular_size);
        let stable_ok = self
            .stable
            .iter()
            .all(|s| self.is_popular(s) && s.size() == self.min_popular_size);
        !self.popular.is_empty() && !self.stable.is_empty() && !self.dominant.is_empty()
            && dominant_ok
            && stable_ok
    }

    /// Edges that lie in at least one matching of `set`.
    pub fn edges_in_some(set: &[Matching]) -> BTreeSet<crate::instance::Edge> {
        set.iter().flat_map(|m| m.edges()).collect()
    }

    /// Edges of `ps` missing from at least one matching of `set`.
    pub fn edges_avoided_by_some(
        ps: &PreferenceSystem,
        set: &[Matching],
    ) -> BTreeSet<crate::instance::Edge> {
        ps.edges()
            .iter()
            .copied()
            .filter(|&e| set.iter().any(|m| !m.contains(e)))
            .collect()
    }

    pub fn covered_union(set: &[Matching]) -> BTreeSet<VertexId> {
        set.iter().flat_map(|m| m.covered()).collect()
    }
}

/// Popular, stable and dominant matchings of `ps` by exhaustive comparison.
///
/// Only maximal matchings are compared: a matching with an edge between two
/// exposed vertices loses to itself plus that edge, and extending any rival
/// to a maximal one never lowers its margin or its size.
pub fn popular_set(ps: &PreferenceSystem, cap: usize) -> Result<EnumerationReport> {
    let all = enumerate_matchings(ps, cap)?;
    let maximal: Vec<&Matching> = all.iter().filter(|m| is_maximal(ps, m)).collect();

    let flags: Vec<(bool, bool)> = maximal
        .par_iter()
        .map(|m| {
            let popular = maximal.iter().all(|r| margin_unchecked(ps, r, m) <= 0);
            let dominant = popular && maximal.iter().all(|r| !defeats_unchecked(ps, r, m));
            (popular, dominant)
        })
        .collect();

    let mut popular = Vec::new();
    let mut dominant = Vec::new();
    for (m, (p, d)) in maximal.iter().zip(flags) {
        if p {
            popular.push((*m).clone());
        }
        if d {
            dominant.push((*m).clone());
        }
    }
    let stable: Vec<Matching> = maximal
        .iter()
        .filter(|m| blocking_pairs(ps, m).is_empty())
        .map(|m| (*m).clone())
        .collect();
    let min_popular_size = popular.iter().map(Matching::size).min().unwrap_or(0);
    let max_popular_size = popular.iter().map(Matching::size).max().unwrap_or(0);
    let popular_set = popular.iter().cloned().collect();
    Ok(EnumerationReport {
        matching_count: all.len(),
        popular,
        stable,
        dominant,
        min_popular_size,
        max_popular_size,
        popular_set,
    })
}

/// V(S) ⊆ V(M) ⊆ V(D) for every popular M, every minimum-size popular S and
/// every maximum-size popular D.
pub fn check_coverage_chain(ps: &PreferenceSystem, cap: usize) -> Result<bool> {
    let report = popular_set(ps, cap)?;
    Ok(node_chain_holds(&report))
}

pub fn node_chain_holds(report: &EnumerationReport) -> bool {
    let smallest: Vec<BTreeSet<VertexId>> = report
        .popular
        .iter()
        .filter(|m| m.size() == report.min_popular_size)
        .map(Matching::covered)
        .collect();
    let largest: Vec<BTreeSet<VertexId>> = report
        .popular
        .iter()
        .filter(|m| m.size() == report.max_popular_size)
        .map(Matching::covered)
        .collect();
    report.popular.iter().all(|m| {
        let covered = m.covered();
        smallest.iter().all(|s| s.is_subset(&covered))
            && largest.iter().all(|d| covered.is_subset(d))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn enumerates_i2x2() {
        let ps = fixtures::i2x2();
        let all = enumerate_matchings(&ps, 100).unwrap();
        assert_eq!(all.len(), 5);
        assert!(all[0].is_empty());
        // Edges sorted: a1b1 (bit 0), a2b1 (bit 1), a2b2 (bit 2).
        assert_eq!(all[1].render(&ps), "a1 b1\n");
        assert_eq!(all[2].render(&ps), "a2 b1\n");
        assert_eq!(all[3].render(&ps), "a2 b2\n");
        assert_eq!(all[4].render(&ps), "a1 b1\na2 b2\n");
        assert_eq!(enumerate_matchings(&fixtures::single_edge(), 10).unwrap().len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let ps = fixtures::i2x2();
        assert_eq!(
            enumerate_matchings(&ps, 4),
            Err(Error::CapExceeded { cap: 4 })
        );
    }

    #[test]
    fn report_for_i2x2() {
        let ps = fixtures::i2x2();
        let r = popular_set(&ps, 100).unwrap();
        let s = fixtures::i2x2_stable(&ps);
        let d = fixtures::i2x2_dominant(&ps);
        assert_eq!(r.matching_count, 5);
        assert_eq!(r.popular, vec![s.clone(), d.clone()]);
        assert_eq!(r.stable, vec![s]);
        assert_eq!(r.dominant, vec![d]);
        assert_eq!((r.min_popular_size, r.max_popular_size), (1, 2));
        assert!(r.is_consistent());
        assert!(check_coverage_chain(&ps, 100).unwrap());
    }

    #[test]
    fn report_for_single_edge() {
        let ps = fixtures::single_edge();
        let r = popular_set(&ps, 10).unwrap();
        let ab = Matching::from_names(&ps, &[("a", "b")]).unwrap();
        assert_eq!(r.popular, vec![ab.clone()]);
        assert_eq!(r.stable, vec![ab.clone()]);
        assert_eq!(r.dominant, vec![ab]);
        assert!(check_coverage_chain(&ps, 10).unwrap());
    }

    #[test]
    fn report_for_i_rot() {
        let ps = fixtures::i_rot();
        let r = popular_set(&ps, 100).unwrap();
        let m1 = Matching::from_names(&ps, &[("a1", "b1"), ("a2", "b2")]).unwrap();
        let m2 = Matching::from_names(&ps, &[("a1", "b2"), ("a2", "b1")]).unwrap();
        assert!(r.is_popular(&m1) && r.is_popular(&m2));
        assert_eq!(r.stable.len(), 2);
        // The two perfect matchings tie 2-2 at equal size, so neither defeats
        // the other and both are dominant.
        assert_eq!(r.dominant.len(), 2);
        assert!(r.is_consistent());
    }

    #[test]
    fn blocking_pair_scan() {
        let ps = fixtures::i2x2();
        let d = fixtures::i2x2_dominant(&ps);
        let a2b1 = ps.edge_by_names("a2", "b1").unwrap();
        assert_eq!(blocking_pairs(&ps, &d), vec![a2b1]);
        assert!(blocking_pairs(&ps, &fixtures::i2x2_stable(&ps)).is_empty());
    }
}
