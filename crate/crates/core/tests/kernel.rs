mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vknot::kernel::{parse, serialize, Code, CodeError, LinkCode};

fn arb_link() -> impl Strategy<Value = LinkCode> {
    (any::<u64>(), 0usize..=6, 1usize..=3).prop_map(|(seed, n, parts)| random_link(&mut ChaCha8Rng::seed_from_u64(seed), n, parts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn text_round_trip(l in arb_link()) {
        let text = serialize(&l);
        prop_assert_eq!(text.parse::<LinkCode>().unwrap(), l.clone());
        match parse(&text).unwrap() {
            Code::Knot(k) => prop_assert_eq!(k.as_link(), &l),
            Code::Link(m) => {
                prop_assert!(l.num_components() != 1);
                prop_assert_eq!(m, l);
            }
        }
    }

    #[test]
    fn involutions(l in arb_link()) {
        prop_assert_eq!(l.mirror().mirror(), l.clone());
        prop_assert_eq!(l.reverse().reverse(), l.clone());
        prop_assert_eq!(l.mirror().writhe(), -l.writhe());
        prop_assert_eq!(l.reverse().writhe(), l.writhe());
    }

    #[test]
    fn canonical_form_forgets_presentation(l in arb_link(), rot in any::<usize>(), salt in 1u32..50) {
        let key = l.canonical_key();
        let c = (rot % l.num_components()).min(l.num_components() - 1);
        prop_assert_eq!(l.rotated(c, rot).canonical_key(), key.clone());
        prop_assert_eq!(l.map_ids(|i| i * 7 + salt).canonical_key(), key.clone());
        prop_assert_eq!(l.relabeled().canonical_key(), key.clone());
        let mut comps = l.components().to_vec();
        comps.reverse();
        prop_assert_eq!(LinkCode::new(comps).unwrap().canonical_key(), key.clone());
        let canon = l.canonicalize();
        prop_assert_eq!(canon.canonicalize(), canon.clone());
        prop_assert_eq!(canon.crossing_count(), l.crossing_count());
    }
}

#[test]
fn rejects_malformed_codes() {
    assert!(matches!("O1+ U1-".parse::<LinkCode>(), Err(CodeError::SignMismatch(1))));
    assert!(matches!("O1+ O1+".parse::<LinkCode>(), Err(CodeError::UnpairedCrossing(1))));
    assert!(matches!("O1+".parse::<LinkCode>(), Err(CodeError::UnpairedCrossing(1))));
    assert!(matches!("X1+ U1+".parse::<LinkCode>(), Err(CodeError::Syntax { .. })));
    assert!(matches!("O1* U1+".parse::<LinkCode>(), Err(CodeError::Syntax { .. })));
    assert!(matches!("O1+ U2+ / O2+ U1+".parse::<vknot::KnotCode>(), Err(CodeError::NotAKnot(2))));
}

#[test]
fn empty_and_crossing_free_components() {
    let u: LinkCode = "".parse().unwrap();
    assert_eq!((u.num_components(), u.crossing_count()), (1, 0));
    let two: LinkCode = " / ".parse().unwrap();
    assert_eq!(two.num_components(), 2);
    assert_eq!(serialize(&two).parse::<LinkCode>().unwrap(), two);
}
