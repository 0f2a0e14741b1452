//! Stable matchings: deferred acceptance, the rotation poset, stable-pair
//! queries and maximum-weight stable matchings.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::instance::{Edge, PreferenceSystem, Side, VertexId};
use crate::matching::Matching;
use crate::oracle::blocking_pairs;
use crate::weights::{Weight, WeightMap};

/// Deferred acceptance with `side` proposing; proposers start in instance
/// order and the first free one proposes next.
pub fn gale_shapley(ps: &PreferenceSystem, side: Side) -> Matching {
    let mut partner: Vec<Option<VertexId>> = vec![None; ps.num_vertices()];
    let mut next = vec![0usize; ps.num_vertices()];
    let mut free: VecDeque<VertexId> = ps.side_vertices(side).collect();
    while let Some(p) = free.pop_front() {
        let list = ps.prefs(p);
        while next[p.index()] < list.len() {
            let r = list[next[p.index()]];
            next[p.index()] += 1;
            match partner[r.index()] {
                None => {
                    partner[r.index()] = Some(p);
                    partner[p.index()] = Some(r);
                    break;
                }
                Some(current) if ps.prefers(r, Some(p), Some(current)) => {
                    partner[r.index()] = Some(p);
                    partner[p.index()] = Some(r);
                    partner[current.index()] = None;
                    free.push_front(current);
                    break;
                }
                Some(_) => {}
            }
        }
    }
    Matching::from_partner_table(partner)
}

pub fn is_stable(ps: &PreferenceSystem, m: &Matching) -> bool {
    blocking_pairs(ps, m).is_empty()
}

/// Vertices covered by every (equivalently, any) stable matching.
pub fn stable_node_set(ps: &PreferenceSystem) -> BTreeSet<VertexId> {
    gale_shapley(ps, Side::A).covered()
}

/// A cyclic exchange: each `a_i` leaves `b_i` for `b_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl Rotation {
    pub fn removed_edges(&self) -> Vec<Edge> {
        self.pairs.iter().map(|&(a, b)| Edge { a, b }).collect()
    }

    pub fn added_edges(&self) -> Vec<Edge> {
        let k = self.pairs.len();
        (0..k)
            .map(|i| Edge {
                a: self.pairs[i].0,
                b: self.pairs[(i + 1) % k].1,
            })
            .collect()
    }

    fn apply(&self, m: &mut Matching) {
        for e in self.removed_edges() {
            m.remove(e);
        }
        for e in self.added_edges() {
            m.insert(e);
        }
    }

    pub fn render(&self, ps: &PreferenceSystem) -> String {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(a, b)| format!("({},{})", ps.name(a), ps.name(b)))
            .collect();
        parts.join(" ")
    }
}

/// Rotations in elimination order from the A-optimal matching, with the
/// direct precedence relation. Discovery order is a linear extension.
#[derive(Clone, Debug)]
pub struct RotationPoset {
    pub a_optimal: Matching,
    pub rotations: Vec<Rotation>,
    /// `predecessors[j]` lists rotations that must be eliminated before `j`.
    pub predecessors: Vec<Vec<usize>>,
    producer: HashMap<Edge, usize>,
    eliminator: HashMap<Edge, usize>,
}

/// The first B-vertex after `M(a)` in `a`'s list that would rather have `a`.
fn successor(ps: &PreferenceSystem, m: &Matching, a: VertexId) -> Option<VertexId> {
    let current = m.partner(a)?;
    let list = ps.prefs(a);
    // Ranks are 1-based, so the rank is also the index just past `current`.
    let start = ps.rank_of(a, current).expect("matched along an edge");
    list[start..]
        .iter()
        .copied()
        .find(|&b| ps.prefers(b, Some(a), m.partner(b)))
}

fn exposed_rotation(ps: &PreferenceSystem, m: &Matching) -> Option<Rotation> {
    let n = ps.num_vertices();
    let mut next: Vec<Option<VertexId>> = vec![None; n];
    for a in ps.side_vertices(Side::A) {
        if let Some(b) = successor(ps, m, a) {
            // An exposed B-vertex ends the chain: `a` can never move past it.
            next[a.index()] = m.partner(b);
        }
    }
    // 0 = unvisited, 1 = on the current walk, 2 = finished.
    let mut state = vec![0u8; n];
    for start in ps.side_vertices(Side::A) {
        let mut walk = Vec::new();
        let mut cur = Some(start);
        while let Some(a) = cur {
            match state[a.index()] {
                0 => {
                    state[a.index()] = 1;
                    walk.push(a);
                    cur = next[a.index()];
                }
                1 => {
                    let pos = walk.iter().position(|&x| x == a).expect("on walk");
                    let pairs = walk[pos..]
                        .iter()
                        .map(|&x| (x, m.partner(x).expect("matched")))
                        .collect();
                    return Some(Rotation { pairs });
                }
                _ => break,
            }
        }
        for a in walk {
            state[a.index()] = 2;
        }
    }
    None
}

pub fn enumerate_rotations(ps: &PreferenceSystem) -> RotationPoset {
    let a_optimal = gale_shapley(ps, Side::A);
    let mut m = a_optimal.clone();
    let mut rotations = Vec::new();
    // Partner history of each B-vertex: (rotation index, new partner).
    let mut history: Vec<Vec<(usize, VertexId)>> = vec![Vec::new(); ps.num_vertices()];
    let mut producer = HashMap::new();
    let mut eliminator = HashMap::new();
    while let Some(rot) = exposed_rotation(ps, &m) {
        let idx = rotations.len();
        for e in rot.removed_edges() {
            eliminator.insert(e, idx);
        }
        for e in rot.added_edges() {
            producer.insert(e, idx);
            history[e.b.index()].push((idx, e.a));
        }
        rot.apply(&mut m);
        rotations.push(rot);
    }

    let mut predecessors = vec![BTreeSet::new(); rotations.len()];
    for (j, rot) in rotations.iter().enumerate() {
        for (e, added) in rot.removed_edges().into_iter().zip(rot.added_edges()) {
            if let Some(&p) = producer.get(&e) {
                predecessors[j].insert(p);
            }
            // Every B-vertex that `a` skips over must already hold someone
            // it prefers to `a`.
            let a = e.a;
            let lo = ps.rank_of(a, e.b).expect("edge");
            let hi = ps.rank_of(a, added.b).expect("edge");
            // Ranks are 1-based: indices lo..hi-1 lie strictly between.
            for &b in &ps.prefs(a)[lo..hi - 1] {
                if ps.prefers(b, a_optimal.partner(b), Some(a)) {
                    continue;
                }
                let crossing = history[b.index()]
                    .iter()
                    .find(|&&(_, p)| ps.prefers(b, Some(p), Some(a)))
                    .map(|&(r, _)| r);
                if let Some(p) = crossing {
                    predecessors[j].insert(p);
                }
            }
        }
    }
    let predecessors = predecessors
        .into_iter()
        .map(|s| s.into_iter().collect::<Vec<_>>())
        .collect::<Vec<_>>();
    debug_assert!(predecessors
        .iter()
        .enumerate()
        .all(|(j, ps)| ps.iter().all(|&p| p < j)));
    RotationPoset {
        a_optimal,
        rotations,
        predecessors,
        producer,
        eliminator,
    }
}

impl RotationPoset {
    pub fn len(&self) -> usize {
        self.rotations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotations.is_empty()
    }

    /// Smallest down-set containing `seeds`.
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut inside = vec![false; self.len()];
        let mut stack: Vec<usize> = seeds.into_iter().collect();
        while let Some(r) = stack.pop() {
            if !std::mem::replace(&mut inside[r], true) {
                stack.extend(&self.predecessors[r]);
            }
        }
        inside
    }

    pub fn is_down_set(&self, inside: &[bool]) -> bool {
        (0..self.len()).all(|r| !inside[r] || self.predecessors[r].iter().all(|&p| inside[p]))
    }

    /// The stable matching reached by eliminating the rotations of a
    /// down-set from the A-optimal matching.
    pub fn matching_of(&self, inside: &[bool]) -> Matching {
        let mut m = self.a_optimal.clone();
        for (r, rot) in self.rotations.iter().enumerate() {
            if inside[r] {
                rot.apply(&mut m);
            }
        }
        m
    }

    /// Rotation that creates `e`, if `e` is not already in the A-optimal
    /// matching.
    pub fn producer(&self, e: Edge) -> Option<usize> {
        self.producer.get(&e).copied()
    }

    pub fn eliminator(&self, e: Edge) -> Option<usize> {
        self.eliminator.get(&e).copied()
    }

    pub fn is_stable_pair(&self, e: Edge) -> bool {
        self.a_optimal.contains(e) || self.producer.contains_key(&e)
    }

    pub fn avoided_by_some(&self, e: Edge) -> bool {
        !self.a_optimal.contains(e) || self.eliminator.contains_key(&e)
    }

    /// A stable matching containing every edge of `include` and none of
    /// `avoid`, if one exists.
    pub fn stable_with(&self, include: &[Edge], avoid: &[Edge]) -> Option<Matching> {
        let mut must_in = Vec::new();
        let mut must_out = Vec::new();
        for &e in include {
            if !self.is_stable_pair(e) {
                return None;
            }
            must_in.extend(self.producer(e));
            must_out.extend(self.eliminator(e));
        }
        // Each avoided stable pair is avoided either by never producing it or
        // by eliminating it again.
        let mut options: Vec<Vec<(bool, usize)>> = Vec::new();
        for &e in avoid {
            if !self.is_stable_pair(e) {
                continue;
            }
            let mut opts = Vec::new();
            if let Some(p) = self.producer(e) {
                opts.push((false, p));
            }
            if let Some(q) = self.eliminator(e) {
                opts.push((true, q));
            }
            if opts.is_empty() {
                return None;
            }
            options.push(opts);
        }
        let mut choice = vec![0usize; options.len()];
        loop {
            let mut seeds = must_in.clone();
            let mut banned = must_out.clone();
            for (opts, &c) in options.iter().zip(&choice) {
                let (include_it, r) = opts[c];
                if include_it {
                    seeds.push(r);
                } else {
                    banned.push(r);
                }
            }
            let inside = self.closure(seeds);
            if banned.iter().all(|&r| !inside[r]) {
                return Some(self.matching_of(&inside));
            }
            // Advance the mixed-radix counter over the option choices.
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return None;
                }
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Every down-set, in a fixed order, as stable matchings.
    pub fn all_matchings(&self, cap: usize) -> Result<Vec<Matching>> {
        let mut out = Vec::new();
        let mut inside = vec![false; self.len()];
        self.down_sets(0, &mut inside, &mut out, cap)?;
        Ok(out)
    }

    fn down_sets(
        &self,
        r: usize,
        inside: &mut Vec<bool>,
        out: &mut Vec<Matching>,
        cap: usize,
    ) -> Result<()> {
        if r == self.len() {
            if out.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(self.matching_of(inside));
            return Ok(());
        }
        self.down_sets(r + 1, inside, out, cap)?;
        if self.predecessors[r].iter().all(|&p| inside[p]) {
            inside[r] = true;
            self.down_sets(r + 1, inside, out, cap)?;
            inside[r] = false;
        }
        Ok(())
    }

    /// Maximum-weight down-set by a minimum cut, returned with its matching.
    pub fn max_weight(&self, ps: &PreferenceSystem, w: &WeightMap) -> (Matching, Weight) {
        let sum = |edges: Vec<Edge>| {
            edges
                .into_iter()
                .fold(Weight::zero(), |acc, e| acc + w.get(ps, e))
        };
        let gains: Vec<Weight> = self
            .rotations
            .iter()
            .map(|r| sum(r.added_edges()) - sum(r.removed_edges()))
            .collect();
        let n = self.len();
        let (source, sink) = (n, n + 1);
        let infinity = gains
            .iter()
            .fold(Weight::from_integer(1.into()), |acc, g| acc + g.abs());
        let mut net = FlowNetwork::new(n + 2);
        let mut positive = Weight::zero();
        for (r, g) in gains.iter().enumerate() {
            if g.is_positive() {
                net.add_arc(source, r, g.clone());
                positive += g;
            } else if g.is_negative() {
                net.add_arc(r, sink, -g);
            }
            for &p in &self.predecessors[r] {
                net.add_arc(r, p, infinity.clone());
            }
        }
        let (cut, side) = net.min_cut(source, sink);
        let inside: Vec<bool> = side[..n].to_vec();
        debug_assert!(self.is_down_set(&inside));
        let m = self.matching_of(&inside);
        let value = w.total(ps, &self.a_optimal) + positive - cut;
        debug_assert_eq!(value, w.total(ps, &m));
        (m, value)
    }
}

/// All stable matchings, from the closed down-sets of the rotation poset.
pub fn all_stable_matchings(ps: &PreferenceSystem, cap: usize) -> Result<Vec<Matching>> {
    enumerate_rotations(ps).all_matchings(cap)
}

fn require_edge(ps: &PreferenceSystem, e: Edge) -> Result<()> {
    if ps.edge_id(e).is_none() {
        return Err(Error::NonEdge(
            ps.name(e.a).to_string(),
            ps.name(e.b).to_string(),
        ));
    }
    Ok(())
}

/// Whether `e` belongs to some stable matching.
pub fn is_stable_pair(ps: &PreferenceSystem, e: Edge) -> Result<bool> {
    require_edge(ps, e)?;
    Ok(enumerate_rotations(ps).is_stable_pair(e))
}

/// Whether some stable matching leaves out `e`.
pub fn avoided_by_some_stable(ps: &PreferenceSystem, e: Edge) -> Result<bool> {
    require_edge(ps, e)?;
    Ok(enumerate_rotations(ps).avoided_by_some(e))
}

/// A stable matching through all of `include` and avoiding all of `avoid`.
pub fn stable_with(ps: &PreferenceSystem, include: &[Edge], avoid: &[Edge]) -> Result<Option<Matching>> {
    for &e in include.iter().chain(avoid) {
        require_edge(ps, e)?;
    }
    Ok(enumerate_rotations(ps).stable_with(include, avoid))
}

pub fn max_weight_stable(ps: &PreferenceSystem, w: &WeightMap) -> Result<(Matching, Weight)> {
    w.validate(ps)?;
    Ok(enumerate_rotations(ps).max_weight(ps, w))
}
