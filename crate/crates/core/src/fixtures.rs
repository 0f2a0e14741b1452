//! Small named instances used throughout the tests and the self-test.

use crate::instance::PreferenceSystem;
use crate::matching::Matching;

/// A = {a1, a2}, B = {b1, b2}; a1: b1; a2: b1 b2; b1: a2 a1; b2: a2.
/// Its unique stable matching has size 1 and its dominant matching size 2.
pub fn i2x2() -> PreferenceSystem {
    PreferenceSystem::new(
        &["a1", "a2"],
        &["b1", "b2"],
        &[
            ("a1", vec!["b1"]),
            ("a2", vec!["b1", "b2"]),
            ("b1", vec!["a2", "a1"]),
            ("b2", vec!["a2"]),
        ],
    )
    .expect("fixture is valid")
}

/// S = {a2b1} on [`i2x2`].
pub fn i2x2_stable(ps: &PreferenceSystem) -> Matching {
    Matching::from_names(ps, &[("a2", "b1")]).expect("fixture is valid")
}

/// D = {a1b1, a2b2} on [`i2x2`].
pub fn i2x2_dominant(ps: &PreferenceSystem) -> Matching {
    Matching::from_names(ps, &[("a1", "b1"), ("a2", "b2")]).expect("fixture is valid")
}

/// Complete 2x2 with opposed preferences: two stable matchings, one rotation.
pub fn i_rot() -> PreferenceSystem {
    PreferenceSystem::new(
        &["a1", "a2"],
        &["b1", "b2"],
        &[
            ("a1", vec!["b1", "b2"]),
            ("a2", vec!["b2", "b1"]),
            ("b1", vec!["a2", "a1"]),
            ("b2", vec!["a1", "a2"]),
        ],
    )
    .expect("fixture is valid")
}

/// A single edge ab.
pub fn single_edge() -> PreferenceSystem {
    PreferenceSystem::new(&["a"], &["b"], &[("a", vec!["b"]), ("b", vec!["a"])])
        .expect("fixture is valid")
}

/// Path a1 - b1 - a2 with b1 preferring a1.
pub fn p3() -> PreferenceSystem {
    PreferenceSystem::new(
        &["a1", "a2"],
        &["b1"],
        &[
            ("a1", vec!["b1"]),
            ("a2", vec!["b1"]),
            ("b1", vec!["a1", "a2"]),
        ],
    )
    .expect("fixture is valid")
}
