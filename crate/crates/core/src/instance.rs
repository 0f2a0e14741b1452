//! Preference systems: bipartite graphs with a strict preference order over
//! each vertex's neighbors, plus the `popmatch-instance v1` text format.
//!
//! ```text
//! popmatch-instance v1
//! A: a1 a2
//! B: b1 b2
//! pref a1: b1
//! pref a2: b1 b2      # most preferred first
//! pref b1: a2 a1
//! pref b2: a2
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const INSTANCE_HEADER: &str = "popmatch-instance v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => f.write_str("A"),
            Side::B => f.write_str("B"),
        }
    }
}

/// An edge, always stored with its A-side endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
}

impl Edge {
    pub fn other(self, v: VertexId) -> VertexId {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }
}

/// A bipartite graph with a strict total order over each vertex's neighbors.
///
/// Ranks are list positions, so strictness holds by construction. Vertex ids
/// number side A first, then side B, each in declaration order.
#[derive(Clone, Debug)]
pub struct PreferenceSystem {
    names: Vec<String>,
    num_a: usize,
    prefs: Vec<Vec<VertexId>>,
    index: HashMap<String, VertexId>,
    ranks: Vec<HashMap<VertexId, usize>>,
    edges: Vec<Edge>,
    edge_ids: HashMap<Edge, usize>,
}

impl PartialEq for PreferenceSystem {
    fn eq(&self, other: &Self) -> bool {
        self.num_a == other.num_a && self.names == other.names && self.prefs == other.prefs
    }
}

impl Eq for PreferenceSystem {}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == ':' || c == '#')
}

impl PreferenceSystem {
    /// Builds and validates a preference system. `prefs` holds one entry per
    /// vertex, most preferred neighbor first.
    pub fn new<S: AsRef<str>>(
        side_a: &[S],
        side_b: &[S],
        prefs: &[(S, Vec<S>)],
    ) -> Result<Self> {
        if side_a.is_empty() {
            return Err(Error::EmptySide('A'));
        }
        if side_b.is_empty() {
            return Err(Error::EmptySide('B'));
        }
        let mut names = Vec::with_capacity(side_a.len() + side_b.len());
        let mut index = HashMap::new();
        for name in side_a.iter().chain(side_b.iter()) {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(Error::InvalidName(name.to_string()));
            }
            let id = VertexId(names.len() as u32);
            if index.insert(name.to_string(), id).is_some() {
                return Err(Error::DuplicateName(name.to_string()));
            }
            names.push(name.to_string());
        }
        let num_a = side_a.len();
        let n = names.len();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };

        let mut lists: Vec<Option<Vec<VertexId>>> = vec![None; n];
        for (owner, list) in prefs {
            let v = lookup(owner.as_ref())?;
            if lists[v.index()].is_some() {
                return Err(Error::DuplicateName(format!("pref {}", owner.as_ref())));
            }
            let mut seen = HashSet::new();
            let mut resolved = Vec::with_capacity(list.len());
            for nb in list {
                let u = lookup(nb.as_ref())?;
                if (u.index() < num_a) == (v.index() < num_a) {
                    return Err(Error::SameSide(
                        owner.as_ref().to_string(),
                        nb.as_ref().to_string(),
                    ));
                }
                if !seen.insert(u) {
                    return Err(Error::DuplicateNeighbor(
                        owner.as_ref().to_string(),
                        nb.as_ref().to_string(),
                    ));
                }
                resolved.push(u);
            }
            lists[v.index()] = Some(resolved);
        }

        let mut pref_lists = Vec::with_capacity(n);
        for (i, list) in lists.into_iter().enumerate() {
            match list {
                Some(l) if l.is_empty() => return Err(Error::IsolatedVertex(names[i].clone())),
                Some(l) => pref_lists.push(l),
                None => return Err(Error::MissingPreferences(names[i].clone())),
            }
        }

        let ranks: Vec<HashMap<VertexId, usize>> = pref_lists
            .iter()
            .map(|l| l.iter().enumerate().map(|(r, &u)| (u, r + 1)).collect())
            .collect();
        for v in 0..n {
            for &u in &pref_lists[v] {
                if !ranks[u.index()].contains_key(&VertexId(v as u32)) {
                    return Err(Error::Asymmetric(names[v].clone(), names[u.index()].clone()));
                }
            }
        }

        let mut edges = Vec::new();
        for a in 0..num_a {
            for &b in &pref_lists[a] {
                edges.push(Edge {
                    a: VertexId(a as u32),
                    b,
                });
            }
        }
        edges.sort();
        let edge_ids = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        Ok(PreferenceSystem {
            names,
            num_a,
            prefs: pref_lists,
            index,
            ranks,
            edges,
            edge_ids,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header_seen = false;
        let mut side_a: Option<Vec<String>> = None;
        let mut side_b: Option<Vec<String>> = None;
        let mut prefs: Vec<(String, Vec<String>)> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: &str| Error::Syntax {
                line,
                message: message.to_string(),
            };
            if !header_seen {
                let words: Vec<&str> = content.split_whitespace().collect();
                if words != ["popmatch-instance", "v1"] {
                    return Err(syntax("expected header `popmatch-instance v1`"));
                }
                header_seen = true;
                continue;
            }
            let (head, rest) = content
                .split_once(':')
                .ok_or_else(|| syntax("expected `A:`, `B:` or `pref <v>:`"))?;
            let tokens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if tokens.iter().any(|t| t.contains(':')) {
                return Err(syntax("vertex names may not contain ':'"));
            }
            let head_words: Vec<&str> = head.split_whitespace().collect();
            match head_words.as_slice() {
                ["A"] => {
                    if side_a.replace(tokens).is_some() {
                        return Err(syntax("side A declared twice"));
                    }
                }
                ["B"] => {
                    if side_b.replace(tokens).is_some() {
                        return Err(syntax("side B declared twice"));
                    }
                }
                ["pref", v] => prefs.push((v.to_string(), tokens)),
                _ => return Err(syntax("expected `A:`, `B:` or `pref <v>:`")),
            }
        }
        if !header_seen {
            return Err(Error::Syntax {
                line: 1,
                message: "missing header `popmatch-instance v1`".to_string(),
            });
        }
        let side_a = side_a.unwrap_or_default();
        let side_b = side_b.unwrap_or_default();
        PreferenceSystem::new(&side_a, &side_b, &prefs)
    }

    /// Serializes to the v1 text format; `parse` inverts it.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(INSTANCE_HEADER);
        out.push('\n');
        out.push_str("A:");
        for v in self.side_vertices(Side::A) {
            out.push(' ');
            out.push_str(self.name(v));
        }
        out.push_str("\nB:");
        for v in self.side_vertices(Side::B) {
            out.push(' ');
            out.push_str(self.name(v));
        }
        out.push('\n');
        for v in self.vertices() {
            out.push_str("pref ");
            out.push_str(self.name(v));
            out.push(':');
            for &u in self.prefs(v) {
                out.push(' ');
                out.push_str(self.name(u));
            }
            out.push('\n');
        }
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::A => self.num_a,
            Side::B => self.names.len() - self.num_a,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len() as u32).map(VertexId)
    }

    pub fn side_vertices(&self, side: Side) -> impl Iterator<Item = VertexId> {
        let range = match side {
            Side::A => 0..self.num_a,
            Side::B => self.num_a..self.names.len(),
        };
        range.map(|i| VertexId(i as u32))
    }

    pub fn side(&self, v: VertexId) -> Side {
        if v.index() < self.num_a {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Neighbors of `v`, most preferred first.
    pub fn prefs(&self, v: VertexId) -> &[VertexId] {
        &self.prefs[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.prefs[v.index()].len()
    }

    /// 1-based position of `v` in `u`'s list, if `uv` is an edge.
    pub fn rank_of(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.ranks[u.index()].get(&v).copied()
    }

    pub fn rank(&self, u: VertexId, v: VertexId) -> Result<usize> {
        self.rank_of(u, v).ok_or_else(|| {
            Error::NonEdge(self.name(u).to_string(), self.name(v).to_string())
        })
    }

    /// Rank lookup by vertex names.
    pub fn rank_by_name(&self, u: &str, v: &str) -> Result<usize> {
        let (iu, iv) = (self.require_vertex(u)?, self.require_vertex(v)?);
        self.rank_of(iu, iv)
            .ok_or_else(|| Error::NonEdge(u.to_string(), v.to_string()))
    }

    /// +1 if `v` prefers `x` to `y`, -1 if it prefers `y`, 0 if they coincide.
    /// Being matched beats being unmatched.
    pub fn vote(&self, v: VertexId, x: Option<VertexId>, y: Option<VertexId>) -> i32 {
        match (x, y) {
            (None, None) => 0,
            (Some(_), None) => 1,
            (None, Some(_)) => -1,
            (Some(x), Some(y)) => {
                let rx = self.ranks[v.index()][&x];
                let ry = self.ranks[v.index()][&y];
                match rx.cmp(&ry) {
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Greater => -1,
                    std::cmp::Ordering::Equal => 0,
                }
            }
        }
    }

    /// Does `v` strictly prefer `x` to `y` (where `None` is being unmatched)?
    pub fn prefers(&self, v: VertexId, x: Option<VertexId>, y: Option<VertexId>) -> bool {
        self.vote(v, x, y) > 0
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.edge_ids.get(&e).copied()
    }

    /// The edge joining `u` and `v` in either order, if present.
    pub fn edge(&self, u: VertexId, v: VertexId) -> Option<Edge> {
        let e = match self.side(u) {
            Side::A => Edge { a: u, b: v },
            Side::B => Edge { a: v, b: u },
        };
        self.edge_ids.contains_key(&e).then_some(e)
    }

    pub fn edge_by_names(&self, u: &str, v: &str) -> Result<Edge> {
        let (iu, iv) = (self.require_vertex(u)?, self.require_vertex(v)?);
        self.edge(iu, iv)
            .ok_or_else(|| Error::NonEdge(u.to_string(), v.to_string()))
    }

    pub fn edge_name(&self, e: Edge) -> String {
        format!("{}{}", self.name(e.a), self.name(e.b))
    }

    /// Renders an edge as the two names separated by a space.
    pub fn edge_label(&self, e: Edge) -> String {
        format!("{} {}", self.name(e.a), self.name(e.b))
    }
}

impl FromStr for PreferenceSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PreferenceSystem::parse(s)
    }
}

impl fmt::Display for PreferenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
