use kkw_core::oracle::quad_rational;
use kkw_core::{Pole, RationalXi, Scalar};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3, -5i64..=5, 0u32..=1).prop_map(|(a, b, c, h)| {
        let s = &Scalar::ratio(a, b) + &(&Scalar::i() * &Scalar::integer(c));
        if h == 1 {
            &s * &Scalar::h1()
        } else {
            s
        }
    })
}

/// `num / ((xi-i)^a (xi+i)^b)` with `deg num <= a + b - 2`.
fn decaying() -> impl Strategy<Value = RationalXi> {
    (0u32..=4, 0u32..=4)
        .prop_filter("needs two poles", |(a, b)| a + b >= 2)
        .prop_flat_map(|(a, b)| {
            prop::collection::vec(coeff(), (a + b - 1) as usize)
                .prop_map(move |num| RationalXi::from_fraction(&num, a, b))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projections_are_idempotent(f in decaying()) {
        let p = f.pi_plus().unwrap();
        prop_assert_eq!(p.pi_plus().unwrap(), p.clone());
        let m = f.pi_minus().unwrap();
        prop_assert_eq!(m.pi_minus().unwrap(), m.clone());
    }

    #[test]
    fn projections_are_complementary(f in decaying()) {
        let p = f.pi_plus().unwrap();
        let m = f.pi_minus().unwrap();
        prop_assert_eq!(p.add(&m), f.clone());
        prop_assert!(p.pi_minus().unwrap().is_zero());
        prop_assert!(m.project(Pole::Upper).unwrap().is_zero());
    }

    #[test]
    fn derivative_obeys_leibniz(f in decaying(), g in decaying()) {
        prop_assert_eq!(f.mul(&g).dxi(), f.dxi().mul(&g).add(&f.mul(&g.dxi())));
    }

    #[test]
    fn derivatives_integrate_to_zero(f in decaying()) {
        prop_assert!(f.dxi().integrate_line().unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn exact_matches_quadrature(f in decaying(), h1 in -2.0f64..2.0) {
        let exact = f.integrate_line().unwrap().to_complex(h1);
        let numeric = quad_rational(&f, h1, 1e-12).unwrap();
        prop_assert!((exact - numeric).norm() <= 1e-8, "exact {exact} numeric {numeric}");
    }
}

#[test]
fn non_decaying_functions_are_refused() {
    let f = RationalXi::from_fraction(&[Scalar::one(), Scalar::one()], 1, 1);
    assert!(f.integrate_line().is_err());
    assert!(RationalXi::xi().pi_plus().is_err());
}
