//! Edge and node weights, held as exact rationals.
//!
//! Weight files carry one `u v <decimal>` line per edge (or `v <decimal>`
//! per vertex for node weights). Entries not listed default to zero.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::{Edge, PreferenceSystem, VertexId};
use crate::matching::Matching;

pub type Weight = BigRational;

/// Parses a decimal such as `-3`, `2.50` or `.5` (also accepts `p/q`).
pub fn parse_weight(text: &str) -> Option<Weight> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (negative, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().ok()?
    };
    let denom = num::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Renders a weight as a decimal when it terminates, else as `p/q`.
pub fn format_weight(w: &Weight) -> String {
    let mut denom = w.denom().clone();
    let mut places = 0usize;
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut scale = BigInt::one();
    while (&denom % &two).is_zero() || (&denom % &five).is_zero() {
        if (&denom % &two).is_zero() {
            denom /= &two;
        } else {
            denom /= &five;
        }
        places += 1;
        scale *= BigInt::from(10u32);
        if places > 18 {
            break;
        }
    }
    if !denom.is_one() {
        return format!("{}/{}", w.numer(), w.denom());
    }
    let scaled = (w * BigRational::from_integer(scale)).to_integer();
    if places == 0 {
        return scaled.to_string();
    }
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let padded = format!("{:0>width$}", digits, width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    weights: Vec<Weight>,
}

impl WeightMap {
    pub fn zero(ps: &PreferenceSystem) -> Self {
        WeightMap {
            weights: vec![Weight::zero(); ps.num_edges()],
        }
    }

    /// Weights listed by edge id.
    pub fn from_vec(ps: &PreferenceSystem, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != ps.num_edges() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} edges",
                weights.len(),
                ps.num_edges()
            )));
        }
        Ok(WeightMap { weights })
    }

    pub fn from_integers(ps: &PreferenceSystem, weights: &[i64]) -> Result<Self> {
        WeightMap::from_vec(
            ps,
            weights
                .iter()
                .map(|&w| Weight::from_integer(w.into()))
                .collect(),
        )
    }

    pub fn from_names(ps: &PreferenceSystem, entries: &[(&str, &str, i64)]) -> Result<Self> {
        let mut map = WeightMap::zero(ps);
        for &(u, v, w) in entries {
            let e = ps.edge_by_names(u, v)?;
            map.set(ps, e, Weight::from_integer(w.into()));
        }
        Ok(map)
    }

    pub fn parse(ps: &PreferenceSystem, text: &str) -> Result<Self> {
        let mut map = WeightMap::zero(ps);
        let mut seen = vec![false; ps.num_edges()];
        for (lineno, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: &str| Error::Syntax {
                line: lineno + 1,
                message: message.to_string(),
            };
            let words: Vec<&str> = content.split_whitespace().collect();
            if words.len() != 3 {
                return Err(syntax("expected `u v <decimal>`"));
            }
            let e = ps.edge_by_names(words[0], words[1])?;
            let w = parse_weight(words[2]).ok_or_else(|| syntax("invalid decimal"))?;
            let id = ps.edge_id(e).expect("edge exists");
            if std::mem::replace(&mut seen[id], true) {
                return Err(syntax("edge weighted twice"));
            }
            map.weights[id] = w;
        }
        Ok(map)
    }

    pub fn render(&self, ps: &PreferenceSystem) -> String {
        let mut out = String::new();
        for (&e, w) in ps.edges().iter().zip(&self.weights) {
            out.push_str(&format!("{} {}\n", ps.edge_label(e), format_weight(w)));
        }
        out
    }

    pub fn validate(&self, ps: &PreferenceSystem) -> Result<()> {
        if self.weights.len() != ps.num_edges() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} edges",
                self.weights.len(),
                ps.num_edges()
            )));
        }
        Ok(())
    }

    pub fn get(&self, ps: &PreferenceSystem, e: Edge) -> &Weight {
        &self.weights[ps.edge_id(e).expect("edge of this instance")]
    }

    pub fn by_id(&self, id: usize) -> &Weight {
        &self.weights[id]
    }

    pub fn set(&mut self, ps: &PreferenceSystem, e: Edge, w: Weight) {
        let id = ps.edge_id(e).expect("edge of this instance");
        self.weights[id] = w;
    }

    /// w(M).
    pub fn total(&self, ps: &PreferenceSystem, m: &Matching) -> Weight {
        m.edges()
            .into_iter()
            .map(|e| self.get(ps, e).clone())
            .fold(Weight::zero(), |acc, w| acc + w)
    }

    /// First edge with a negative weight, if any.
    pub fn first_negative(&self, ps: &PreferenceSystem) -> Option<Edge> {
        ps.edges()
            .iter()
            .zip(&self.weights)
            .find(|(_, w)| w.is_negative())
            .map(|(&e, _)| e)
    }

    pub fn negated(&self) -> WeightMap {
        WeightMap {
            weights: self.weights.iter().map(|w| -w).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeWeights {
    weights: Vec<Weight>,
}

impl NodeWeights {
    pub fn zero(ps: &PreferenceSystem) -> Self {
        NodeWeights {
            weights: vec![Weight::zero(); ps.num_vertices()],
        }
    }

    pub fn from_names(ps: &PreferenceSystem, entries: &[(&str, i64)]) -> Result<Self> {
        let mut map = NodeWeights::zero(ps);
        for &(v, w) in entries {
            let v = ps.require_vertex(v)?;
            map.weights[v.index()] = Weight::from_integer(w.into());
        }
        Ok(map)
    }

    pub fn parse(ps: &PreferenceSystem, text: &str) -> Result<Self> {
        let mut map = NodeWeights::zero(ps);
        for (lineno, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: &str| Error::Syntax {
                line: lineno + 1,
                message: message.to_string(),
            };
            let words: Vec<&str> = content.split_whitespace().collect();
            if words.len() != 2 {
                return Err(syntax("expected `v <decimal>`"));
            }
            let v = ps.require_vertex(words[0])?;
            map.weights[v.index()] =
                parse_weight(words[1]).ok_or_else(|| syntax("invalid decimal"))?;
        }
        Ok(map)
    }

    pub fn get(&self, v: VertexId) -> &Weight {
        &self.weights[v.index()]
    }

    pub fn first_negative(&self) -> Option<VertexId> {
        self.weights
            .iter()
            .position(|w| w.is_negative())
            .map(|i| VertexId(i as u32))
    }

    /// Σ_{v ∈ V(M)} w(v).
    pub fn covered_total(&self, m: &Matching) -> Weight {
        m.covered()
            .into_iter()
            .fold(Weight::zero(), |acc, v| acc + self.get(v))
    }
}
