use integrability_core::diffop::{apply_op, commutator, compose, LinearDiffOp, RationalFn, UPoly};
use integrability_core::exprjet::rat;
use proptest::prelude::*;

fn upoly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    proptest::collection::vec((-5i64..=5, 1i64..=3), 0..=max_deg + 1)
        .prop_map(|c| UPoly::new(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

fn operator(max_order: usize, max_deg: usize) -> impl Strategy<Value = LinearDiffOp> {
    proptest::collection::vec(upoly(max_deg), 1..=max_order + 1).prop_map(LinearDiffOp::from_polys)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn composition_is_associative(a in operator(3, 3), b in operator(3, 3), c in operator(3, 3)) {
        let left = compose(&compose(&a, &b), &c);
        let right = compose(&a, &compose(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn orders_add(l in operator(3, 3), m in operator(3, 3)) {
        let lm = compose(&l, &m);
        match (l.order(), m.order()) {
            (Some(a), Some(b)) => prop_assert_eq!(lm.order(), Some(a + b)),
            _ => prop_assert!(lm.is_zero()),
        }
    }

    #[test]
    fn commutator_of_derivations_is_a_derivation(a in upoly(4), b in upoly(4)) {
        let da = LinearDiffOp::new(vec![RationalFn::zero(), a.clone().into()]);
        let db = LinearDiffOp::new(vec![RationalFn::zero(), b.clone().into()]);
        let c = commutator(&da, &db);
        prop_assert!(c.order().unwrap_or(0) <= 1);
        prop_assert!(c.coeff(0).is_zero());
        let expect = &(&a * &b.derivative()) - &(&a.derivative() * &b);
        prop_assert_eq!(c.coeff(1), RationalFn::from(expect));
    }

    #[test]
    fn composition_agrees_with_application(l in operator(3, 3), m in operator(3, 3), p in upoly(6)) {
        let f = RationalFn::from(p);
        prop_assert_eq!(apply_op(&compose(&l, &m), &f), apply_op(&l, &apply_op(&m, &f)));
    }

    #[test]
    fn rational_coefficients_compose_consistently(a in upoly(2), q in upoly(2), p in upoly(4)) {
        // coefficient a / (1 + q^2) never has a vanishing denominator
        let den = &UPoly::one() + &(&q * &q);
        let r = RationalFn::new(a, den);
        let l = LinearDiffOp::new(vec![RationalFn::zero(), r.clone(), r]);
        let m = LinearDiffOp::d(1);
        let f = RationalFn::from(p);
        prop_assert_eq!(apply_op(&compose(&l, &m), &f), apply_op(&l, &apply_op(&m, &f)));
        prop_assert_eq!(apply_op(&compose(&m, &l), &f), apply_op(&m, &apply_op(&l, &f)));
    }
}
