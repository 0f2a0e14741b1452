use popmatch::oracle::{enumerate_matchings, DEFAULT_CAP};
use popmatch::random::{random_instance, InstanceShape};
use popmatch::votes::{defeats, margin, phi};
use popmatch::{Matching, PreferenceSystem};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> PreferenceSystem {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), InstanceShape::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn instance_render_round_trip(seed in any::<u64>()) {
        let ps = instance(seed);
        prop_assert_eq!(PreferenceSystem::parse(&ps.render()).unwrap(), ps);
    }

    #[test]
    fn matching_render_round_trip(seed in any::<u64>()) {
        let ps = instance(seed);
        for m in enumerate_matchings(&ps, DEFAULT_CAP).unwrap() {
            prop_assert_eq!(Matching::parse(&ps, &m.render(&ps)).unwrap(), m);
        }
    }

    #[test]
    fn votes_are_bounded_and_antisymmetric(seed in any::<u64>()) {
        let ps = instance(seed);
        let all = enumerate_matchings(&ps, DEFAULT_CAP).unwrap();
        for m in &all {
            prop_assert!(!defeats(&ps, m, m).unwrap());
            prop_assert_eq!(margin(&ps, m, m).unwrap(), 0);
            for r in &all {
                let x = phi(&ps, m, r).unwrap();
                let y = phi(&ps, r, m).unwrap();
                prop_assert!(x + y <= ps.num_vertices());
                prop_assert_eq!(margin(&ps, m, r).unwrap(), -margin(&ps, r, m).unwrap());
                prop_assert_eq!(margin(&ps, m, r).unwrap(), x as i64 - y as i64);
            }
        }
    }
}
