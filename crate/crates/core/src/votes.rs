//! Head-to-head comparison of two matchings by vertex votes.

use crate::error::Result;
use crate::instance::PreferenceSystem;
use crate::matching::Matching;

/// φ(M, M2): the number of vertices that prefer `m` to `m2`.
pub fn phi(ps: &PreferenceSystem, m: &Matching, m2: &Matching) -> Result<usize> {
    m.validate(ps)?;
    m2.validate(ps)?;
    Ok(phi_unchecked(ps, m, m2))
}

pub(crate) fn phi_unchecked(ps: &PreferenceSystem, m: &Matching, m2: &Matching) -> usize {
    ps.vertices()
        .filter(|&v| ps.vote(v, m.partner(v), m2.partner(v)) > 0)
        .count()
}

/// φ(M, M2) − φ(M2, M).
pub(crate) fn margin_unchecked(ps: &PreferenceSystem, m: &Matching, m2: &Matching) -> i64 {
    ps.vertices()
        .map(|v| ps.vote(v, m.partner(v), m2.partner(v)) as i64)
        .sum()
}

pub fn margin(ps: &PreferenceSystem, m: &Matching, m2: &Matching) -> Result<i64> {
    m.validate(ps)?;
    m2.validate(ps)?;
    Ok(margin_unchecked(ps, m, m2))
}

/// `m` is more popular than `m2`: φ(m, m2) > φ(m2, m).
pub fn is_more_popular(ps: &PreferenceSystem, m: &Matching, m2: &Matching) -> Result<bool> {
    Ok(margin(ps, m, m2)? > 0)
}

/// `m` defeats `m2`: it is more popular, or ties and is strictly larger.
pub fn defeats(ps: &PreferenceSystem, m: &Matching, m2: &Matching) -> Result<bool> {
    m.validate(ps)?;
    m2.validate(ps)?;
    Ok(defeats_unchecked(ps, m, m2))
}

pub(crate) fn defeats_unchecked(ps: &PreferenceSystem, m: &Matching, m2: &Matching) -> bool {
    let d = margin_unchecked(ps, m, m2);
    d > 0 || (d == 0 && m.size() > m2.size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn phi_of_matching_with_itself_is_zero() {
        let ps = fixtures::i2x2();
        let d = fixtures::i2x2_dominant(&ps);
        assert_eq!(phi(&ps, &d, &d).unwrap(), 0);
    }

    #[test]
    fn matched_beats_unmatched() {
        let ps = fixtures::i2x2();
        let s = fixtures::i2x2_stable(&ps);
        assert_eq!(phi(&ps, &s, &Matching::empty(&ps)).unwrap(), 2);
    }

    #[test]
    fn stable_and_dominant_tie_on_i2x2() {
        // a1 and b2 prefer D (matched vs exposed); a2 and b1 prefer S.
        let ps = fixtures::i2x2();
        let s = fixtures::i2x2_stable(&ps);
        let d = fixtures::i2x2_dominant(&ps);
        assert_eq!(phi(&ps, &d, &s).unwrap(), 2);
        assert_eq!(phi(&ps, &s, &d).unwrap(), 2);
        assert!(!is_more_popular(&ps, &d, &s).unwrap());
        assert!(defeats(&ps, &d, &s).unwrap());
        assert!(!is_more_popular(&ps, &s, &d).unwrap());
        assert!(!defeats(&ps, &s, &d).unwrap());
    }

    #[test]
    fn defeats_is_irreflexive_on_fixture() {
        let ps = fixtures::i2x2();
        for m in [fixtures::i2x2_stable(&ps), fixtures::i2x2_dominant(&ps)] {
            assert!(!defeats(&ps, &m, &m).unwrap());
            assert!(!is_more_popular(&ps, &m, &m).unwrap());
        }
    }

    #[test]
    fn rejects_foreign_matchings() {
        let ps = fixtures::i2x2();
        let other = Matching::empty(&fixtures::single_edge());
        assert!(phi(&ps, &other, &Matching::empty(&ps)).is_err());
    }
}
