//! Weighted popular matchings: the 1/2-approximation for maximum weight,
//! exact exhaustive solvers, and node-weighted optimization.

use crate::constrained::{all_popular_matchings, SearchBudget};
use crate::dominant::{max_weight_dominant, two_level_gale_shapley};
use crate::error::{Error, Result};
use crate::instance::{PreferenceSystem, Side};
use crate::matching::Matching;
use crate::stable::{gale_shapley, max_weight_stable};
use crate::weights::{NodeWeights, Weight, WeightMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    pub matching: Matching,
    pub value: Weight,
    /// Best stable weight.
    pub stable_value: Weight,
    /// Best dominant weight.
    pub dominant_value: Weight,
}

/// The heavier of a maximum-weight stable and a maximum-weight dominant
/// matching. Every popular matching weighs at most twice this value.
pub fn mwp_half_approx(ps: &PreferenceSystem, w: &WeightMap) -> Result<ApproxResult> {
    w.validate(ps)?;
    if let Some(e) = w.first_negative(ps) {
        return Err(Error::NegativeWeight(ps.edge_label(e)));
    }
    let (s, stable_value) = max_weight_stable(ps, w)?;
    let (d, dominant_value) = max_weight_dominant(ps, w)?;
    let (matching, value) = if dominant_value > stable_value {
        (d, dominant_value.clone())
    } else {
        (s, stable_value.clone())
    };
    Ok(ApproxResult {
        matching,
        value,
        stable_value,
        dominant_value,
    })
}

fn exact(
    ps: &PreferenceSystem,
    w: &WeightMap,
    budget: SearchBudget,
    better: fn(&Weight, &Weight) -> bool,
) -> Result<(Matching, Weight)> {
    w.validate(ps)?;
    let mut best: Option<(Matching, Weight)> = None;
    // Candidates arrive in a fixed order, so ties resolve deterministically.
    for m in all_popular_matchings(ps, budget)? {
        let value = w.total(ps, &m);
        if best.as_ref().map_or(true, |(_, b)| better(&value, b)) {
            best = Some((m, value));
        }
    }
    Ok(best.expect("every instance has a popular matching"))
}

/// Maximum-weight popular matching by exhaustive search.
pub fn mwp_exact(ps: &PreferenceSystem, w: &WeightMap, budget: SearchBudget) -> Result<(Matching, Weight)> {
    exact(ps, w, budget, |x, y| x > y)
}

/// Minimum-weight popular matching by exhaustive search.
pub fn miwp_exact(ps: &PreferenceSystem, w: &WeightMap, budget: SearchBudget) -> Result<(Matching, Weight)> {
    exact(ps, w, budget, |x, y| x < y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

/// Optimum of Σ_{v ∈ V(M)} wv(v) over popular M, for nonnegative wv: a
/// stable matching for the minimum and a dominant one for the maximum.
pub fn node_weighted_opt(
    ps: &PreferenceSystem,
    wv: &NodeWeights,
    direction: Direction,
) -> Result<(Matching, Weight)> {
    if let Some(v) = wv.first_negative() {
        return Err(Error::NegativeWeight(ps.name(v).to_string()));
    }
    let m = match direction {
        Direction::Min => gale_shapley(ps, Side::A),
        Direction::Max => two_level_gale_shapley(ps),
    };
    let value = wv.covered_total(&m);
    Ok((m, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;
    use crate::fixtures;

    fn int(x: i64) -> Weight {
        Weight::from_integer(x.into())
    }

    #[test]
    fn approximation_examples() {
        let ps = fixtures::i2x2();
        let unit = WeightMap::from_names(&ps, &[("a1", "b1", 1), ("a2", "b2", 1), ("a2", "b1", 1)]).unwrap();
        let r = mwp_half_approx(&ps, &unit).unwrap();
        assert_eq!(r.value, int(2));
        assert_eq!(r.matching, fixtures::i2x2_dominant(&ps));
        assert_eq!(mwp_exact(&ps, &unit, SearchBudget::exponential()).unwrap().1, int(2));

        let w = WeightMap::from_names(&ps, &[("a2", "b1", 5)]).unwrap();
        let r = mwp_half_approx(&ps, &w).unwrap();
        assert_eq!((r.value, r.stable_value, r.dominant_value), (int(5), int(5), int(0)));

        assert!(mwp_half_approx(&ps, &WeightMap::zero(&ps)).unwrap().value.is_zero());
        let negative = WeightMap::from_names(&ps, &[("a2", "b1", -1)]).unwrap();
        assert!(matches!(mwp_half_approx(&ps, &negative), Err(Error::NegativeWeight(_))));
    }

    #[test]
    fn exact_examples() {
        let ps = fixtures::i2x2();
        let w = WeightMap::from_names(&ps, &[("a2", "b1", 1)]).unwrap();
        let (m, value) = miwp_exact(&ps, &w, SearchBudget::exponential()).unwrap();
        assert_eq!((m, value), (fixtures::i2x2_dominant(&ps), int(0)));
        assert!(mwp_exact(&ps, &w, SearchBudget::default()).is_err());

        let single = fixtures::single_edge();
        let w = WeightMap::from_names(&single, &[("a", "b", 4)]).unwrap();
        assert_eq!(mwp_exact(&single, &w, SearchBudget::exponential()).unwrap().1, int(4));
        assert_eq!(miwp_exact(&single, &w, SearchBudget::exponential()).unwrap().1, int(4));
    }

    #[test]
    fn node_weight_examples() {
        let ps = fixtures::i2x2();
        let wv = NodeWeights::from_names(&ps, &[("a1", 1)]).unwrap();
        assert_eq!(node_weighted_opt(&ps, &wv, Direction::Max).unwrap().1, int(1));
        assert_eq!(node_weighted_opt(&ps, &wv, Direction::Min).unwrap().1, int(0));
        let zero = NodeWeights::zero(&ps);
        assert!(node_weighted_opt(&ps, &zero, Direction::Max).unwrap().1.is_zero());
        let negative = NodeWeights::from_names(&ps, &[("b2", -2)]).unwrap();
        assert!(node_weighted_opt(&ps, &negative, Direction::Min).is_err());
    }
}
