//! Monotone 3-SAT to popular matchings with two forbidden edges.
//!
//! Every literal occurrence gets a gadget. Positive gadgets have vertices
//! a..g and edges ab, bc, bd, ce, de, df, fg; negative gadgets add h and
//! have edges ab, ac, bd, be, cd, ce, ef, eh, fg. Within a clause the apex
//! `a` of the first gadget is `u` and every later apex is the previous
//! gateway `g`; the last gateway is joined to `v`. Consistency edges join
//! the `c` vertices of a positive and a negative occurrence of the same
//! variable. The formula is satisfiable iff some popular matching avoids
//! both `st` and `wx`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constrained::{solve_pmffe, SearchBudget};
use crate::constraints::ConstraintSet;
use crate::error::{Error, Result};
use crate::instance::{Edge, PreferenceSystem, VertexId};
use crate::matching::Matching;
use crate::popularity::is_popular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal {
            positive: !self.positive,
            ..self
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        Some(Literal {
            var: x.unsigned_abs() as usize,
            positive: x > 0,
        })
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

/// A CNF formula with at most three literals per clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn from_literals(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            let bad = |msg: &str| Err(Error::InvalidFormula(format!("clause {}: {msg}", i + 1)));
            if clause.is_empty() {
                return bad("empty clause");
            }
            if clause.len() > 3 {
                return bad("more than three literals");
            }
            let vars: HashSet<usize> = clause.iter().map(|l| l.var).collect();
            if vars.len() != clause.len() {
                return bad("repeated variable");
            }
            if clause.iter().any(|l| l.var == 0 || l.var > num_vars) {
                return bad("variable out of range");
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Clauses as signed DIMACS integers.
    pub fn new(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&x| Literal::from_dimacs(x).ok_or_else(|| Error::InvalidFormula("literal 0".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::from_literals(num_vars, clauses)
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let syntax = |message: String| Error::Syntax {
                line: lineno + 1,
                message,
            };
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                let words: Vec<&str> = line.split_whitespace().collect();
                if words.len() != 4 || words[1] != "cnf" || header.is_some() {
                    return Err(syntax("expected `p cnf <vars> <clauses>`".into()));
                }
                let vars = words[2].parse().map_err(|_| syntax("bad variable count".into()))?;
                let count = words[3].parse().map_err(|_| syntax("bad clause count".into()))?;
                header = Some((vars, count));
                continue;
            }
            if header.is_none() {
                return Err(syntax("clause before the `p cnf` header".into()));
            }
            for word in line.split_whitespace() {
                let x: i64 = word.parse().map_err(|_| syntax(format!("bad literal `{word}`")))?;
                match Literal::from_dimacs(x) {
                    Some(l) => current.push(l),
                    None => clauses.push(std::mem::take(&mut current)),
                }
            }
        }
        let (num_vars, count) = header.ok_or_else(|| Error::InvalidFormula("missing `p cnf` header".into()))?;
        if !current.is_empty() {
            return Err(Error::InvalidFormula("last clause is not terminated by 0".into()));
        }
        if clauses.len() != count {
            return Err(Error::InvalidFormula(format!(
                "header announces {count} clauses, found {}",
                clauses.len()
            )));
        }
        CnfFormula::from_literals(num_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                out.push_str(&format!("{} ", l.to_dimacs()));
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn is_monotone(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().all(|l| l.positive) || c.iter().all(|l| !l.positive))
    }

    /// Both clause polarities occur and every occurring variable occurs with
    /// both signs.
    pub fn is_normalized(&self) -> bool {
        let has = |positive: bool| self.clauses.iter().any(|c| c[0].positive == positive);
        let signs = self.signs();
        has(true) && has(false) && signs.values().all(|&(p, n)| p && n)
    }

    fn signs(&self) -> BTreeMap<usize, (bool, bool)> {
        let mut signs: BTreeMap<usize, (bool, bool)> = BTreeMap::new();
        for l in self.clauses.iter().flatten() {
            let entry = signs.entry(l.var).or_default();
            if l.positive {
                entry.0 = true;
            } else {
                entry.1 = true;
            }
        }
        signs
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c.iter().map(Literal::to_string).collect();
                format!("({})", lits.join(" ∨ "))
            })
            .collect();
        f.write_str(&parts.join(" ∧ "))
    }
}

/// First satisfying assignment in binary counting order, if any.
pub fn brute_force_sat(f: &CnfFormula) -> Option<Vec<bool>> {
    let n = f.num_vars();
    assert!(n < 30, "brute force over {n} variables");
    (0u64..1 << n)
        .map(|mask| (0..n).map(|i| (mask >> i) & 1 == 1).collect::<Vec<_>>())
        .find(|a| f.evaluate(a))
}

/// Splits every mixed clause with a fresh variable into a positive and a
/// negative clause.
pub fn to_monotone(f: &CnfFormula) -> CnfFormula {
    let mut num_vars = f.num_vars;
    let mut clauses = Vec::new();
    for clause in &f.clauses {
        let (pos, neg): (Vec<Literal>, Vec<Literal>) = clause.iter().partition(|l| l.positive);
        if pos.is_empty() || neg.is_empty() {
            clauses.push(clause.clone());
            continue;
        }
        num_vars += 1;
        let mut p = pos;
        p.push(Literal::pos(num_vars));
        let mut n = vec![Literal::neg(num_vars)];
        n.extend(neg);
        clauses.push(p);
        clauses.push(n);
    }
    CnfFormula { num_vars, clauses }
}

/// Adds fresh `p`, `q` with (p ∨ q) ∧ (¬p ∨ ¬q), then pairs every
/// single-sign variable x with (¬x ∨ ¬p ∨ ¬q) or (x ∨ p ∨ q). Exactly one
/// of p, q holds, so the new clauses never constrain x.
pub fn normalize_monotone(f: &CnfFormula) -> Result<CnfFormula> {
    if !f.is_monotone() {
        return Err(Error::NotMonotone(first_mixed(f)));
    }
    if f.is_normalized() {
        return Ok(f.clone());
    }
    let p = f.num_vars + 1;
    let q = f.num_vars + 2;
    let mut clauses = f.clauses.clone();
    clauses.push(vec![Literal::pos(p), Literal::pos(q)]);
    clauses.push(vec![Literal::neg(p), Literal::neg(q)]);
    for (var, (has_pos, has_neg)) in f.signs() {
        if has_pos && !has_neg {
            clauses.push(vec![Literal::neg(var), Literal::neg(p), Literal::neg(q)]);
        } else if has_neg && !has_pos {
            clauses.push(vec![Literal::pos(var), Literal::pos(p), Literal::pos(q)]);
        }
    }
    Ok(CnfFormula {
        num_vars: f.num_vars + 2,
        clauses,
    })
}

fn first_mixed(f: &CnfFormula) -> usize {
    f.clauses
        .iter()
        .position(|c| c.iter().any(|l| l.positive) && c.iter().any(|l| !l.positive))
        .map_or(0, |i| i + 1)
}

/// Names of one literal occurrence's gadget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetRecord {
    /// 1-based clause and position within the clause.
    pub clause: usize,
    pub position: usize,
    pub literal: Literal,
    /// `u`, or the gateway of the previous gadget in the clause.
    pub apex: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub e: String,
    pub f: String,
    pub g: String,
    /// Negative gadgets only.
    pub h: Option<String>,
}

type NamePair = (String, String);

fn pair(x: &str, y: &str) -> NamePair {
    (x.to_string(), y.to_string())
}

impl GadgetRecord {
    /// T(ℓ): {bc, de} for positive gadgets, {ce, bd} for negative ones.
    pub fn true_edges(&self) -> [NamePair; 2] {
        if self.literal.positive {
            [pair(&self.b, &self.c), pair(&self.d, &self.e)]
        } else {
            [pair(&self.c, &self.e), pair(&self.b, &self.d)]
        }
    }

    /// F(ℓ): {bd, ce} for positive gadgets, {cd, be} for negative ones.
    pub fn false_edges(&self) -> [NamePair; 2] {
        if self.literal.positive {
            [pair(&self.b, &self.d), pair(&self.c, &self.e)]
        } else {
            [pair(&self.c, &self.d), pair(&self.b, &self.e)]
        }
    }

    pub fn evicted_edge(&self) -> Option<NamePair> {
        self.h.as_ref().map(|h| pair(&self.e, h))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialVertices {
    pub s: String,
    pub t: String,
    pub u: String,
    pub v: String,
    pub w: String,
    pub x: String,
    pub y: String,
}

/// Where each piece of G(ψ) lives, by vertex name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMap {
    pub special: SpecialVertices,
    pub gadgets: Vec<GadgetRecord>,
    pub consistency_edges: Vec<NamePair>,
    pub evicted_edges: Vec<NamePair>,
    /// F = {st, wx}.
    pub forbidden: Vec<NamePair>,
}

impl GadgetMap {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("gadget map serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Precondition(format!("bad gadget map: {e}")))
    }

    pub fn edge(&self, ps: &PreferenceSystem, p: &NamePair) -> Result<Edge> {
        ps.edge_by_names(&p.0, &p.1)
    }

    pub fn edges(&self, ps: &PreferenceSystem, pairs: &[NamePair]) -> Result<Vec<Edge>> {
        pairs.iter().map(|p| self.edge(ps, p)).collect()
    }

    pub fn vertex(&self, ps: &PreferenceSystem, name: &str) -> Result<VertexId> {
        ps.require_vertex(name)
    }

    /// The forbidden-edge constraint {st, wx}.
    pub fn constraints(&self, ps: &PreferenceSystem) -> Result<ConstraintSet> {
        let mut cs = ConstraintSet::new();
        for e in self.edges(ps, &self.forbidden)? {
            cs = cs.forbid_edge(e);
        }
        Ok(cs)
    }

    /// Apexes and gateways, each once.
    pub fn apexes_and_gateways(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in &self.gadgets {
            for name in [&g.apex, &g.g] {
                if seen.insert(name.clone()) {
                    out.push(name.clone());
                }
            }
        }
        out
    }
}

/// Order of the apex and `d` at the top of a negative `c` list. Both
/// placements pass every structural test; the apex goes first.
const NEGATIVE_C_APEX_FIRST: bool = true;

#[derive(Default)]
struct Lists {
    a_side: Vec<String>,
    b_side: Vec<String>,
    prefs: BTreeMap<String, Vec<String>>,
}

impl Lists {
    fn add_a(&mut self, name: &str) {
        self.a_side.push(name.to_string());
    }

    fn add_b(&mut self, name: &str) {
        self.b_side.push(name.to_string());
    }

    fn set(&mut self, v: &str, list: Vec<String>) {
        self.prefs.insert(v.to_string(), list);
    }

    fn push(&mut self, v: &str, w: &str) {
        self.prefs.entry(v.to_string()).or_default().push(w.to_string());
    }
}

/// Builds (G(ψ), <) for a monotone formula. Normalization is not required.
pub fn build_graph(f: &CnfFormula) -> Result<(PreferenceSystem, GadgetMap)> {
    if !f.is_monotone() {
        return Err(Error::NotMonotone(first_mixed(f)));
    }
    let special = SpecialVertices {
        s: "s".into(),
        t: "t".into(),
        u: "u".into(),
        v: "v".into(),
        w: "w".into(),
        x: "x".into(),
        y: "y".into(),
    };
    let mut lists = Lists::default();
    for name in ["s", "u", "w", "y"] {
        lists.add_a(name);
    }
    for name in ["t", "v", "x"] {
        lists.add_b(name);
    }

    let mut gadgets: Vec<GadgetRecord> = Vec::new();
    for (i, clause) in f.clauses().iter().enumerate() {
        for (j, &literal) in clause.iter().enumerate() {
            let tag = format!("({}.{})", i + 1, j + 1);
            let name = |x: &str| format!("{x}{tag}");
            let apex = if j == 0 {
                "u".to_string()
            } else {
                gadgets.last().expect("previous gadget").g.clone()
            };
            gadgets.push(GadgetRecord {
                clause: i + 1,
                position: j + 1,
                literal,
                apex,
                b: name("b"),
                c: name("c"),
                d: name("d"),
                e: name("e"),
                f: name("f"),
                g: name("g"),
                h: (!literal.positive).then(|| name("h")),
            });
        }
    }

    // Consistency partners of each c, in literal order.
    let mut partners: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut consistency_edges = Vec::new();
    for p in gadgets.iter().filter(|g| g.literal.positive) {
        for n in gadgets.iter().filter(|g| !g.literal.positive && g.literal.var == p.literal.var) {
            consistency_edges.push(pair(&p.c, &n.c));
        }
    }
    for (pc, nc) in &consistency_edges {
        partners.entry(pc.clone()).or_default().push(nc.clone());
    }
    for g in gadgets.iter().filter(|g| !g.literal.positive) {
        let list = consistency_edges
            .iter()
            .filter(|(_, nc)| *nc == g.c)
            .map(|(pc, _)| pc.clone())
            .collect();
        partners.insert(g.c.clone(), list);
    }

    lists.set("s", vec!["t".into()]);
    lists.set("t", vec!["u".into(), "s".into()]);
    lists.set("u", vec!["t".into()]);
    lists.set("w", vec!["x".into(), "v".into()]);
    lists.set("x", vec!["w".into(), "y".into()]);
    lists.set("y", vec!["x".into()]);
    lists.set("v", Vec::new());

    for (k, g) in gadgets.iter().enumerate() {
        let own = |x: &str| x.to_string();
        let cons = partners.get(&g.c).cloned().unwrap_or_default();
        if g.literal.positive {
            for v in [&g.c, &g.d, &g.g] {
                lists.add_a(v);
            }
            for v in [&g.b, &g.e, &g.f] {
                lists.add_b(v);
            }
            lists.set(&g.b, vec![own(&g.c), own(&g.apex), own(&g.d)]);
            let mut c = vec![own(&g.e)];
            c.extend(cons);
            c.push(own(&g.b));
            lists.set(&g.c, c);
            lists.set(&g.d, vec![own(&g.b), own(&g.e), own(&g.f)]);
            lists.set(&g.e, vec![own(&g.d), own(&g.c)]);
            lists.set(&g.f, vec![own(&g.d), own(&g.g)]);
        } else {
            let h = g.h.as_ref().expect("negative gadget has h");
            for v in [&g.d, &g.e, &g.g] {
                lists.add_a(v);
            }
            for v in [&g.b, &g.c, &g.f, h] {
                lists.add_b(v);
            }
            lists.set(&g.b, vec![own(&g.apex), own(&g.e), own(&g.d)]);
            let mut c = if NEGATIVE_C_APEX_FIRST {
                vec![own(&g.apex), own(&g.d)]
            } else {
                vec![own(&g.d), own(&g.apex)]
            };
            c.extend(cons);
            c.push(own(&g.e));
            lists.set(&g.c, c);
            lists.set(&g.d, vec![own(&g.b), own(&g.c)]);
            lists.set(&g.e, vec![own(&g.c), own(&g.f), own(&g.b), own(h)]);
            lists.set(&g.f, vec![own(&g.g), own(&g.e)]);
            lists.set(h, vec![own(&g.e)]);
        }
        // The apex ranks this gadget's c (negative only) and then b after
        // its favorite.
        if !g.literal.positive {
            lists.push(&g.apex, &g.c);
        }
        lists.push(&g.apex, &g.b);
        lists.set(&g.g, vec![own(&g.f)]);
        let last = gadgets.get(k + 1).map_or(true, |n| n.clause != g.clause);
        if last {
            lists.push(&g.g, "v");
            lists.push("v", &g.g);
        }
    }
    lists.push("v", "w");

    // Gateways get their successors appended after their own lists exist.
    let mut fixed: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (k, g) in gadgets.iter().enumerate() {
        if let Some(n) = gadgets.get(k + 1).filter(|n| n.clause == g.clause) {
            let mut list = vec![g.f.clone()];
            if !n.literal.positive {
                list.push(n.c.clone());
            }
            list.push(n.b.clone());
            fixed.insert(g.g.clone(), list);
        }
    }
    for (v, list) in fixed {
        lists.set(&v, list);
    }

    let prefs: Vec<(String, Vec<String>)> = lists.prefs.into_iter().collect();
    let ps = PreferenceSystem::new(&lists.a_side, &lists.b_side, &prefs)?;
    let evicted_edges = gadgets.iter().filter_map(GadgetRecord::evicted_edge).collect();
    let map = GadgetMap {
        special,
        gadgets,
        consistency_edges,
        evicted_edges,
        forbidden: vec![pair("s", "t"), pair("w", "x")],
    };
    Ok((ps, map))
}

/// {tu, vw, xy}, every fg, and T(ℓ) or F(ℓ) per gadget: a gadget gets T
/// exactly when its literal is true.
pub fn assignment_to_matching(ps: &PreferenceSystem, gm: &GadgetMap, assignment: &[bool]) -> Result<Matching> {
    let needed = gm.gadgets.iter().map(|g| g.literal.var).max().unwrap_or(0);
    if assignment.len() < needed {
        return Err(Error::IncompleteAssignment(format!("{} values for {needed} variables", assignment.len())));
    }
    let sp = &gm.special;
    let mut pairs = vec![pair(&sp.t, &sp.u), pair(&sp.v, &sp.w), pair(&sp.x, &sp.y)];
    for g in &gm.gadgets {
        pairs.push(pair(&g.f, &g.g));
        if g.literal.holds(assignment) {
            pairs.extend(g.true_edges());
        } else {
            pairs.extend(g.false_edges());
        }
    }
    Matching::from_edges(ps, gm.edges(ps, &pairs)?)
}

/// Reads an assignment off a popular matching avoiding {st, wx}: a variable
/// is true if T(ℓ) ⊆ M for one of its positive occurrences, false if T(ℓ) ⊆
/// M for a negative one. Undecided variables follow their F(ℓ) gadgets when
/// those agree (all positive occurrences false, or all negative ones), and
/// default to true otherwise.
pub fn matching_to_assignment(
    ps: &PreferenceSystem,
    gm: &GadgetMap,
    m: &Matching,
    num_vars: usize,
) -> Result<Vec<bool>> {
    for e in gm.edges(ps, &gm.forbidden)? {
        if m.contains(e) {
            return Err(Error::Precondition(format!("matching contains {}", ps.edge_label(e))));
        }
    }
    if !is_popular(ps, m)?.popular {
        return Err(Error::Precondition("matching is not popular".into()));
    }
    let mut decided: Vec<Option<bool>> = vec![None; num_vars];
    for g in &gm.gadgets {
        let t = gm.edges(ps, &g.true_edges())?;
        if t.iter().all(|&e| m.contains(e)) {
            let value = g.literal.positive;
            match decided[g.literal.var - 1] {
                Some(old) if old != value => {
                    return Err(Error::Precondition(format!(
                        "variable x{} is read both ways",
                        g.literal.var
                    )))
                }
                _ => decided[g.literal.var - 1] = Some(value),
            }
        }
    }
    // (has positive occurrence, has negative occurrence)
    let mut kinds = vec![(false, false); num_vars];
    for g in &gm.gadgets {
        let k = &mut kinds[g.literal.var - 1];
        if g.literal.positive {
            k.0 = true;
        } else {
            k.1 = true;
        }
    }
    Ok(decided
        .into_iter()
        .zip(kinds)
        .map(|(d, (pos, neg))| d.unwrap_or(!(pos && !neg)))
        .collect())
}

/// Extra constraints for larger forced or forbidden sets.
#[derive(Clone, Debug)]
pub struct Padding {
    pub ps: PreferenceSystem,
    /// Pendant edges zk, in every popular matching.
    pub forced_edges: Vec<Edge>,
    pub forced_nodes: Vec<VertexId>,
    /// Evicted edges eh and their h ends, in no popular matching through tu.
    pub forbidden_edges: Vec<Edge>,
    pub forbidden_nodes: Vec<VertexId>,
}

/// Adds `k_in` pendant pairs z, k (k hanging off the first gateway, z and k
/// each other's favorites) and selects `k_out` evicted edges.
pub fn pad_constraints(ps: &PreferenceSystem, gm: &GadgetMap, k_in: usize, k_out: usize) -> Result<Padding> {
    let available = gm.evicted_edges.len();
    if k_out > available {
        return Err(Error::NotEnoughNegativeGadgets {
            requested: k_out,
            available,
        });
    }
    let mut padded = ps.clone();
    let mut pendant = Vec::new();
    if k_in > 0 {
        let anchor = gm
            .gadgets
            .first()
            .map(|g| g.g.clone())
            .ok_or_else(|| Error::Precondition("no gadget to anchor padding".into()))?;
        let taken: HashSet<&str> = ps.vertices().map(|v| ps.name(v)).collect();
        let mut a_side: Vec<String> = ps.side_vertices(crate::Side::A).map(|v| ps.name(v).to_string()).collect();
        let mut b_side: Vec<String> = ps.side_vertices(crate::Side::B).map(|v| ps.name(v).to_string()).collect();
        let mut prefs: BTreeMap<String, Vec<String>> = ps
            .vertices()
            .map(|v| {
                let list = ps.prefs(v).iter().map(|&w| ps.name(w).to_string()).collect();
                (ps.name(v).to_string(), list)
            })
            .collect();
        // The anchor is a gateway, hence on the A side: z goes to A, k to B.
        for i in 1..=k_in {
            let z = format!("z({i})");
            let k = format!("k({i})");
            if taken.contains(z.as_str()) || taken.contains(k.as_str()) {
                return Err(Error::DuplicateName(z));
            }
            a_side.push(z.clone());
            b_side.push(k.clone());
            prefs.insert(z.clone(), vec![k.clone()]);
            prefs.insert(k.clone(), vec![z.clone(), anchor.clone()]);
            prefs.get_mut(&anchor).expect("anchor exists").push(k.clone());
            pendant.push((z, k));
        }
        let prefs: Vec<(String, Vec<String>)> = prefs.into_iter().collect();
        padded = PreferenceSystem::new(&a_side, &b_side, &prefs)?;
    }
    let forced_edges = pendant
        .iter()
        .map(|(z, k)| padded.edge_by_names(z, k))
        .collect::<Result<Vec<_>>>()?;
    let forced_nodes = pendant
        .iter()
        .map(|(z, _)| padded.require_vertex(z))
        .collect::<Result<Vec<_>>>()?;
    let chosen = &gm.evicted_edges[..k_out];
    let forbidden_edges = gm.edges(&padded, chosen)?;
    let forbidden_nodes = chosen
        .iter()
        .map(|(_, h)| padded.require_vertex(h))
        .collect::<Result<Vec<_>>>()?;
    Ok(Padding {
        ps: padded,
        forced_edges,
        forced_nodes,
        forbidden_edges,
        forbidden_nodes,
    })
}

/// Satisfiability through the reduction: monotonize, normalize, build
/// G(ψ), and look for a popular matching avoiding {st, wx}. Returns an
/// assignment of the original variables when one exists.
pub fn solve_via_matching(f: &CnfFormula, budget: SearchBudget) -> Result<Option<Vec<bool>>> {
    let monotone = normalize_monotone(&to_monotone(f))?;
    if monotone.clauses().is_empty() {
        return Ok(Some(vec![true; f.num_vars()]));
    }
    let (ps, gm) = build_graph(&monotone)?;
    let cs = gm.constraints(&ps)?;
    let outcome = solve_pmffe(&ps, &cs, budget)?;
    match outcome.matching() {
        None => Ok(None),
        Some(m) => {
            let mut assignment = matching_to_assignment(&ps, &gm, m, monotone.num_vars())?;
            assignment.truncate(f.num_vars());
            Ok(Some(assignment))
        }
    }
}

pub fn decide_sat(f: &CnfFormula, budget: SearchBudget) -> Result<bool> {
    Ok(solve_via_matching(f, budget)?.is_some())
}
