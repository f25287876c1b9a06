mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vknot::invariants::{ac_alexander, generalized_alexander, odd_writhe, writhe_polynomial};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn invariants_survive_random_moves(seed in any::<u64>(), n in 0usize..=6, steps in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = random_knot(&mut rng, n);
        let (end, path) = random_walk(&mut rng, start.as_link(), steps);
        let end = end.to_knot().unwrap();
        let ctx = format!("{start} -> {end} via {path:?}");
        prop_assert_eq!(odd_writhe(&start), odd_writhe(&end), "{}", ctx);
        prop_assert_eq!(writhe_polynomial(&start), writhe_polynomial(&end), "{}", ctx);
        prop_assert_eq!(ac_alexander(&start).poly, ac_alexander(&end).poly, "{}", ctx);
        prop_assert_eq!(generalized_alexander(&start), generalized_alexander(&end), "{}", ctx);
    }
}
