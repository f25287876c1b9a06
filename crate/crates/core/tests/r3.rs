mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vknot::invariants::{ac_alexander, generalized_alexander, writhe_polynomial};
use vknot::kernel::KnotCode;
use vknot::moves::{apply, inverse, r3_moves, MoveSite};
use vknot::surface::RibbonGraph;

/// Exercises every R3 site found on many random diagrams.
#[test]
fn every_r3_site_preserves_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sites_seen = 0;
    for _ in 0..4000 {
        let n = 3 + (rand::Rng::gen_range(&mut rng, 0..4));
        let k = random_knot(&mut rng, n);
        for m in r3_moves(k.as_link()) {
            sites_seen += 1;
            let after: KnotCode = apply(k.as_link(), &m).unwrap().to_knot().unwrap();
            assert_eq!(writhe_polynomial(&k), writhe_polynomial(&after), "{k} {m}");
            assert_eq!(ac_alexander(&k).poly, ac_alexander(&after).poly, "{k} {m}");
            assert_eq!(generalized_alexander(&k), generalized_alexander(&after), "{k} {m}");
            let (g0, g1) = (RibbonGraph::new(k.as_link()), RibbonGraph::new(after.as_link()));
            assert_eq!(g0.euler_characteristic(), g1.euler_characteristic(), "{k} {m}");
            let back = inverse(k.as_link(), &m).unwrap();
            assert!(matches!(back, MoveSite::R3 { .. }));
            assert_eq!(apply(after.as_link(), &back).unwrap(), *k.as_link());
        }
    }
    assert!(sites_seen > 100, "only {sites_seen} R3 sites");
}
