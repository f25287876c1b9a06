use proptest::prelude::*;
use vknot::algebra::{fox_derivative, GroupWord, LaurentPoly, LaurentPoly2, Matrix};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (prop::collection::vec(-4i64..=4, 0..6), -3i32..=3).prop_map(|(c, s)| LaurentPoly::from_coeffs(&c).shift(s))
}

fn poly2() -> impl Strategy<Value = LaurentPoly2> {
    prop::collection::vec(((-2i32..=2, -2i32..=2), -3i64..=3), 0..5).prop_map(LaurentPoly2::from_terms)
}

fn word() -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0usize..3, prop_oneof![Just(1i8), Just(-1i8)]), 0..8).prop_map(GroupWord::new)
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<LaurentPoly>> {
    prop::collection::vec(poly(), n * n).prop_map(move |v| Matrix::from_rows(v.chunks(n).map(|r| r.to_vec()).collect(), n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn two_variable_ring_laws(a in poly2(), b in poly2(), c in poly2()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.shift(2, -1).equal_up_to_units(&a));
    }

    #[test]
    fn exact_division_and_gcd(a in poly(), b in poly(), d in poly()) {
        prop_assume!(!d.is_zero());
        let (ad, bd) = (&a * &d, &b * &d);
        prop_assert_eq!(ad.div_exact(&d), Some(a.clone()));
        let g = ad.gcd(&bd);
        if !(a.is_zero() && b.is_zero()) {
            prop_assert!(ad.div_exact(&g).is_some());
            prop_assert!(bd.div_exact(&g).is_some());
            // a common multiple of d
            prop_assert!(g.div_exact(&d).is_some());
        }
    }

    #[test]
    fn unit_normalization(a in poly(), k in -5i32..=5, neg in any::<bool>()) {
        let u = a.shift(k).scale(&(if neg { -1 } else { 1 }).into());
        prop_assert_eq!(u.normalize_units(), a.normalize_units());
        prop_assert_eq!(a.normalize_units().normalize_units(), a.normalize_units());
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), &a.determinant().unwrap() * &b.determinant().unwrap());
        prop_assert_eq!(a.transpose().determinant().unwrap(), a.determinant().unwrap());
    }

    // fundamental formula of Fox calculus, abelianized: Σ_j ∂w/∂x_j · (t − 1) = t^{e(w)} − 1
    #[test]
    fn fox_fundamental_formula(w in word()) {
        let mut lhs = LaurentPoly::zero();
        for j in 0..3 {
            lhs = &lhs + &fox_derivative(&w, j).abelianize();
        }
        let lhs = &lhs * &LaurentPoly::from_coeffs(&[-1, 1]);
        let rhs = &LaurentPoly::mono(1, w.exponent_sum()) - &LaurentPoly::one();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fox_derivative_of_product(u in word(), v in word(), j in 0usize..3) {
        // ∂(uv) = ∂u + u·∂v
        let lhs = fox_derivative(&u.concat(&v), j);
        let rhs = fox_derivative(&u, j).plus(&fox_derivative(&v, j).left_mul(&u));
        prop_assert_eq!(lhs.abelianize(), rhs.abelianize());
    }
}

#[test]
fn polynomial_text_form() {
    assert_eq!(LaurentPoly::from_coeffs(&[-1, 0, 0, 2]).to_string(), "-1+2*t^3");
    assert_eq!(LaurentPoly::zero().to_string(), "0");
    assert_eq!(LaurentPoly2::from_terms([((1, 2), 1), ((0, 0), -1)]).to_string(), "-1+s*t^2");
}
