use kkw_core::clifford::{trace_cyclicity_check, Blade, CliffordElement};
use kkw_core::Scalar;
use proptest::prelude::*;

fn element(dim: usize) -> impl Strategy<Value = CliffordElement> {
    let full = (1u64 << dim) - 1;
    prop::collection::vec((0..=full, -3i64..=3, -3i64..=3), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(
            CliffordElement::zero(dim).unwrap(),
            |acc, (bits, re, im)| {
                let idx: Vec<usize> = (0..dim)
                    .filter(|b| bits >> b & 1 == 1)
                    .map(|b| b + 1)
                    .collect();
                let (blade, _) = Blade::from_indices(&idx).unwrap();
                let c = &Scalar::integer(re) + &(&Scalar::i() * &Scalar::integer(im));
                acc.add(&CliffordElement::blade(dim, blade, c).unwrap())
                    .unwrap()
            },
        )
    })
}

fn triple() -> impl Strategy<Value = (CliffordElement, CliffordElement, CliffordElement)> {
    (1usize..=6).prop_flat_map(|d| (element(d), element(d), element(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn product_distributes((a, b, c) in triple()) {
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn generators_anticommute(dim in 1usize..=8, i in 1usize..=8, j in 1usize..=8) {
        prop_assume!(i <= dim && j <= dim);
        let ei = CliffordElement::generator(dim, i).unwrap();
        let ej = CliffordElement::generator(dim, j).unwrap();
        let anti = ei.mul(&ej).unwrap().add(&ej.mul(&ei).unwrap()).unwrap();
        let expected = if i == j { -2 } else { 0 };
        prop_assert_eq!(anti, CliffordElement::scalar(dim, Scalar::integer(expected)).unwrap());
    }

    #[test]
    fn trace_is_cyclic((a, b, _) in triple()) {
        prop_assert!(trace_cyclicity_check(&a, &b).unwrap());
    }
}

#[test]
fn spinor_dimension() {
    for (dim, tr) in [(2, 2), (3, 2), (5, 4), (6, 8)] {
        assert_eq!(
            CliffordElement::identity(dim).unwrap().spinor_trace(),
            Scalar::integer(tr)
        );
    }
}

#[test]
fn mixed_dimensions_are_rejected() {
    let a = CliffordElement::generator(3, 1).unwrap();
    let b = CliffordElement::generator(4, 1).unwrap();
    assert!(a.mul(&b).is_err());
    assert!(CliffordElement::generator(3, 4).is_err());
}
