//! Dominant matchings through the two-level instance G′.
//!
//! Every A-vertex `a` gets two copies `a_0`, `a_1` and a private dummy `d(a)`
//! on the B side. A B-vertex ranks all level-1 copies above all level-0
//! copies. Stable matchings of G′ project onto dominant matchings of G by
//! forgetting levels and dropping dummy edges.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::instance::{Edge, PreferenceSystem, Side, VertexId};
use crate::matching::Matching;
use crate::stable::{enumerate_rotations, RotationPoset};
use crate::weights::{Weight, WeightMap};

/// What a vertex of G′ stands for in G.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Copy { vertex: VertexId, level: u8 },
    Dummy(VertexId),
    Same(VertexId),
}

#[derive(Clone, Debug)]
pub struct LevelledInstance {
    pub gprime: PreferenceSystem,
    pub origin: Vec<Origin>,
    copies: Vec<Option<[VertexId; 2]>>,
    same: Vec<Option<VertexId>>,
}

fn fresh(base: String, taken: &mut HashSet<String>) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}

pub fn build_levelled_instance(ps: &PreferenceSystem) -> LevelledInstance {
    let mut taken: HashSet<String> = ps.vertices().map(|v| ps.name(v).to_string()).collect();
    let a_side: Vec<VertexId> = ps.side_vertices(Side::A).collect();
    let b_side: Vec<VertexId> = ps.side_vertices(Side::B).collect();

    let mut names_a = Vec::new();
    let mut names_dummy = Vec::new();
    let mut copy_names = Vec::new();
    for &a in &a_side {
        let name = ps.name(a);
        let c0 = fresh(format!("{name}_0"), &mut taken);
        let c1 = fresh(format!("{name}_1"), &mut taken);
        let d = fresh(format!("d({name})"), &mut taken);
        names_a.push(c0.clone());
        names_a.push(c1.clone());
        names_dummy.push(d.clone());
        copy_names.push((c0, c1, d));
    }
    let mut names_b: Vec<String> = b_side.iter().map(|&b| ps.name(b).to_string()).collect();
    names_b.extend(names_dummy.iter().cloned());

    let mut prefs: Vec<(String, Vec<String>)> = Vec::new();
    for (&a, (c0, c1, d)) in a_side.iter().zip(&copy_names) {
        let list: Vec<String> = ps.prefs(a).iter().map(|&b| ps.name(b).to_string()).collect();
        let mut l0 = list.clone();
        l0.push(d.clone());
        let mut l1 = vec![d.clone()];
        l1.extend(list);
        prefs.push((c0.clone(), l0));
        prefs.push((c1.clone(), l1));
        prefs.push((d.clone(), vec![c0.clone(), c1.clone()]));
    }
    let index_of_a = |a: VertexId| a_side.iter().position(|&x| x == a).expect("A-vertex");
    for &b in &b_side {
        let mut list = Vec::new();
        for level in [1, 0] {
            for &a in ps.prefs(b) {
                let (c0, c1, _) = &copy_names[index_of_a(a)];
                list.push(if level == 0 { c0.clone() } else { c1.clone() });
            }
        }
        prefs.push((ps.name(b).to_string(), list));
    }
    let gprime = PreferenceSystem::new(&names_a, &names_b, &prefs).expect("levelled instance is valid");

    let mut origin = vec![Origin::Same(VertexId(0)); gprime.num_vertices()];
    let mut copies = vec![None; ps.num_vertices()];
    let mut same = vec![None; ps.num_vertices()];
    for (&a, (c0, c1, d)) in a_side.iter().zip(&copy_names) {
        let (v0, v1, vd) = (
            gprime.vertex(c0).expect("built"),
            gprime.vertex(c1).expect("built"),
            gprime.vertex(d).expect("built"),
        );
        origin[v0.index()] = Origin::Copy { vertex: a, level: 0 };
        origin[v1.index()] = Origin::Copy { vertex: a, level: 1 };
        origin[vd.index()] = Origin::Dummy(a);
        copies[a.index()] = Some([v0, v1]);
    }
    for &b in &b_side {
        let v = gprime.vertex(ps.name(b)).expect("built");
        origin[v.index()] = Origin::Same(b);
        same[b.index()] = Some(v);
    }
    LevelledInstance {
        gprime,
        origin,
        copies,
        same,
    }
}

impl LevelledInstance {
    /// The level-`level` copy of `e` in G′.
    pub fn lift_edge(&self, e: Edge, level: u8) -> Edge {
        let a = self.copies[e.a.index()].expect("A-vertex")[usize::from(level)];
        let b = self.same[e.b.index()].expect("B-vertex");
        Edge { a, b }
    }

    /// σ: forget levels and drop dummy edges.
    pub fn sigma(&self, ps: &PreferenceSystem, m: &Matching) -> Matching {
        let edges = m.edges().into_iter().filter_map(|e| {
            match (self.origin[e.a.index()], self.origin[e.b.index()]) {
                (Origin::Copy { vertex, .. }, Origin::Same(b)) => Some(Edge { a: vertex, b }),
                _ => None,
            }
        });
        Matching::from_edges(ps, edges).expect("projection of a stable matching of G′")
    }

    /// w′(a_i b) = w(ab); dummy edges weigh 0.
    pub fn lift_weights(&self, ps: &PreferenceSystem, w: &WeightMap) -> WeightMap {
        let weights = self
            .gprime
            .edges()
            .iter()
            .map(|e| match (self.origin[e.a.index()], self.origin[e.b.index()]) {
                (Origin::Copy { vertex, .. }, Origin::Same(b)) => w.get(ps, Edge { a: vertex, b }).clone(),
                _ => Weight::from_integer(0.into()),
            })
            .collect();
        WeightMap::from_vec(&self.gprime, weights).expect("one weight per edge of G′")
    }
}

/// Deferred acceptance with a single promotion: an A-vertex rejected by its
/// whole list at level 0 starts over at level 1, and B-vertices rank any
/// level-1 proposer above any level-0 proposer.
pub fn two_level_gale_shapley(ps: &PreferenceSystem) -> Matching {
    let n = ps.num_vertices();
    let mut partner: Vec<Option<VertexId>> = vec![None; n];
    let mut level = vec![0u8; n];
    let mut next = vec![0usize; n];
    let mut free: VecDeque<VertexId> = ps.side_vertices(Side::A).collect();
    // Higher is better: (level, -rank).
    let key = |b: VertexId, a: VertexId, level: &[u8]| {
        (level[a.index()], std::cmp::Reverse(ps.rank_of(b, a).expect("edge")))
    };
    while let Some(a) = free.pop_front() {
        let list = ps.prefs(a);
        let mut placed = false;
        while next[a.index()] < list.len() {
            let b = list[next[a.index()]];
            next[a.index()] += 1;
            match partner[b.index()] {
                None => {
                    partner[b.index()] = Some(a);
                    partner[a.index()] = Some(b);
                    placed = true;
                }
                Some(held) if key(b, a, &level) > key(b, held, &level) => {
                    partner[b.index()] = Some(a);
                    partner[a.index()] = Some(b);
                    partner[held.index()] = None;
                    free.push_front(held);
                    placed = true;
                }
                Some(_) => {}
            }
            if placed {
                break;
            }
        }
        if !placed && level[a.index()] == 0 {
            level[a.index()] = 1;
            next[a.index()] = 0;
            free.push_front(a);
        }
    }
    Matching::from_partner_table(partner)
}

/// Vertices covered by every dominant matching.
pub fn dominant_node_set(ps: &PreferenceSystem) -> BTreeSet<VertexId> {
    two_level_gale_shapley(ps).covered()
}

/// G′ together with its rotation poset, for repeated dominant queries.
#[derive(Clone, Debug)]
pub struct DominantStructure {
    pub levelled: LevelledInstance,
    pub poset: RotationPoset,
}

impl DominantStructure {
    pub fn new(ps: &PreferenceSystem) -> Self {
        let levelled = build_levelled_instance(ps);
        let poset = enumerate_rotations(&levelled.gprime);
        DominantStructure { levelled, poset }
    }

    pub fn is_dominant_pair(&self, e: Edge) -> bool {
        (0..2).any(|l| self.poset.is_stable_pair(self.levelled.lift_edge(e, l)))
    }

    pub fn avoided_by_some(&self, e: Edge) -> bool {
        let avoid = [self.levelled.lift_edge(e, 0), self.levelled.lift_edge(e, 1)];
        self.poset.stable_with(&[], &avoid).is_some()
    }

    /// A dominant matching containing all of `include` and none of `avoid`.
    pub fn dominant_with(&self, ps: &PreferenceSystem, include: &[Edge], avoid: &[Edge]) -> Option<Matching> {
        let avoid: Vec<Edge> = avoid
            .iter()
            .flat_map(|&e| [self.levelled.lift_edge(e, 0), self.levelled.lift_edge(e, 1)])
            .collect();
        // Each included edge may appear at either level.
        let k = include.len();
        (0..1u64 << k).find_map(|mask| {
            let lifted: Vec<Edge> = include
                .iter()
                .enumerate()
                .map(|(i, &e)| self.levelled.lift_edge(e, ((mask >> i) & 1) as u8))
                .collect();
            self.poset
                .stable_with(&lifted, &avoid)
                .map(|m| self.levelled.sigma(ps, &m))
        })
    }

    pub fn all_matchings(&self, ps: &PreferenceSystem, cap: usize) -> Result<Vec<Matching>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for m in self.poset.all_matchings(cap)? {
            let projected = self.levelled.sigma(ps, &m);
            if seen.insert(projected.clone()) {
                out.push(projected);
            }
        }
        Ok(out)
    }
}

fn require_edge(ps: &PreferenceSystem, e: Edge) -> Result<()> {
    if ps.edge_id(e).is_none() {
        return Err(Error::NonEdge(ps.name(e.a).to_string(), ps.name(e.b).to_string()));
    }
    Ok(())
}

pub fn is_dominant_pair(ps: &PreferenceSystem, e: Edge) -> Result<bool> {
    require_edge(ps, e)?;
    Ok(DominantStructure::new(ps).is_dominant_pair(e))
}

pub fn avoided_by_some_dominant(ps: &PreferenceSystem, e: Edge) -> Result<bool> {
    require_edge(ps, e)?;
    Ok(DominantStructure::new(ps).avoided_by_some(e))
}

/// Distinct projections of the stable matchings of G′.
pub fn all_dominant_matchings(ps: &PreferenceSystem, cap: usize) -> Result<Vec<Matching>> {
    DominantStructure::new(ps).all_matchings(ps, cap)
}

pub fn max_weight_dominant(ps: &PreferenceSystem, w: &WeightMap) -> Result<(Matching, Weight)> {
    w.validate(ps)?;
    let structure = DominantStructure::new(ps);
    let lifted = structure.levelled.lift_weights(ps, w);
    let (m, value) = structure.poset.max_weight(&structure.levelled.gprime, &lifted);
    let projected = structure.levelled.sigma(ps, &m);
    debug_assert_eq!(w.total(ps, &projected), value);
    Ok((projected, value))
}
