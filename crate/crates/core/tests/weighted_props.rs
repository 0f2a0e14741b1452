use num::BigRational;
use popmatch::oracle::{popular_set, DEFAULT_CAP};
use popmatch::random::{random_instance, random_weights, InstanceShape};
use popmatch::stable::gale_shapley;
use popmatch::weighted::{node_weighted_opt, mwp_half_approx, Direction};
use popmatch::{NodeWeights, Side};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn half_approximation_bound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ps = random_instance(&mut rng, InstanceShape::default());
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        let two = BigRational::from_integer(2.into());
        for _ in 0..200 {
            let w = random_weights(&mut rng, &ps, 10);
            let r = mwp_half_approx(&ps, &w).unwrap();
            prop_assert!(report.is_popular(&r.matching));
            prop_assert_eq!(&w.total(&ps, &r.matching), &r.value);
            for m in &report.popular {
                prop_assert!(r.value.clone() * two.clone() >= w.total(&ps, m));
            }
        }
    }

    #[test]
    fn node_weight_optima_do_not_depend_on_the_choice(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ps = random_instance(&mut rng, InstanceShape::default());
        let report = popular_set(&ps, DEFAULT_CAP).unwrap();
        let text: String = ps
            .vertices()
            .map(|v| format!("{} {}\n", ps.name(v), rng.gen_range(0..6)))
            .collect();
        let wv = NodeWeights::parse(&ps, &text).unwrap();
        let (_, low) = node_weighted_opt(&ps, &wv, Direction::Min).unwrap();
        let (_, high) = node_weighted_opt(&ps, &wv, Direction::Max).unwrap();
        for s in &report.stable {
            prop_assert_eq!(&wv.covered_total(s), &low);
        }
        for d in &report.dominant {
            prop_assert_eq!(&wv.covered_total(d), &high);
        }
        for m in &report.popular {
            let v = wv.covered_total(m);
            prop_assert!(low <= v && v <= high);
        }
        prop_assert_eq!(wv.covered_total(&gale_shapley(&ps, Side::B)), low);
    }
}
