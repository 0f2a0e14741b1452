use std::collections::BTreeSet;

use popmatch::dominant::{
    all_dominant_matchings, dominant_node_set, max_weight_dominant, two_level_gale_shapley,
    DominantStructure,
};
use popmatch::oracle::{node_chain_holds, popular_set, DEFAULT_CAP};
use popmatch::popularity::{is_dominant, is_popular};
use popmatch::random::{random_instance, random_weights, InstanceShape};
use popmatch::stable::stable_node_set;
use popmatch::votes::defeats;
use popmatch::PreferenceSystem;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> PreferenceSystem {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), InstanceShape::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_level_output_is_dominant_and_maximum(seed in any::<u64>()) {
        let ps = instance(seed);
        let d = two_level_gale_shapley(&ps);
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        prop_assert!(is_popular(&ps, &d).unwrap().popular);
        prop_assert!(is_dominant(&ps, &d).unwrap().dominant);
        prop_assert_eq!(d.size(), report.max_popular_size);
        let all = popmatch::oracle::enumerate_matchings(&ps, DEFAULT_CAP).unwrap();
        prop_assert!(all.iter().all(|r| !defeats(&ps, r, &d).unwrap()));
    }

    #[test]
    fn projections_are_exactly_the_dominant_matchings(seed in any::<u64>()) {
        let ps = instance(seed);
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        let projected: BTreeSet<Vec<usize>> = all_dominant_matchings(&ps, 100_000)
            .unwrap()
            .iter()
            .map(|m| m.encoding(&ps))
            .collect();
        let expected: BTreeSet<Vec<usize>> = report.dominant.iter().map(|m| m.encoding(&ps)).collect();
        prop_assert_eq!(projected, expected);
    }

    #[test]
    fn dominant_pairs_match_oracle(seed in any::<u64>()) {
        let ps = instance(seed);
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        let structure = DominantStructure::new(&ps);
        for &e in ps.edges() {
            prop_assert_eq!(structure.is_dominant_pair(e), report.dominant.iter().any(|m| m.contains(e)));
            prop_assert_eq!(structure.avoided_by_some(e), report.dominant.iter().any(|m| !m.contains(e)));
        }
    }

    #[test]
    fn node_chain(seed in any::<u64>()) {
        let ps = instance(seed);
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        prop_assert!(node_chain_holds(&report));
        let low = stable_node_set(&ps);
        let high = dominant_node_set(&ps);
        for m in &report.popular {
            let covered = m.covered();
            prop_assert!(low.is_subset(&covered) && covered.is_subset(&high));
        }
    }

    #[test]
    fn max_weight_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ps = random_instance(&mut rng, InstanceShape::default());
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        for _ in 0..5 {
            let w = random_weights(&mut rng, &ps, 9);
            let best = report.dominant.iter().map(|m| w.total(&ps, m)).max().unwrap();
            let (m, value) = max_weight_dominant(&ps, &w).unwrap();
            prop_assert_eq!(&value, &best);
            prop_assert!(report.dominant.contains(&m));
        }
    }
}
