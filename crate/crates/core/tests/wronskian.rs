use integrability_core::diffop::UPoly;
use integrability_core::wronskian::*;
use integrability_core::Error;
use proptest::prelude::*;

fn spec(basis: Vec<BasisFunction>, window: (f64, f64)) -> KernelSpec {
    KernelSpec::new(basis, window, 33).unwrap()
}

#[test]
fn wronskian_values() {
    let one_x = [BasisFunction::from_catalog("1").unwrap(), BasisFunction::from_catalog("x").unwrap()];
    let sc = [BasisFunction::sin(), BasisFunction::cos()];
    for x in [-2.0, 0.3, 1.7, 10.0] {
        assert!((wronskian_det(&one_x, x).unwrap() - 1.0).abs() < 1e-15);
        assert!((wronskian_det(&sc, x).unwrap() + 1.0).abs() < 1e-15);
    }
    let dep = vec![BasisFunction::polynomial(vec![0.0, 1.0]), BasisFunction::polynomial(vec![0.0, 2.0])];
    assert!(matches!(spec(dep.clone(), (1.0, 2.0)).validate(), Err(Error::Degenerate { .. })));
    assert!(matches!(operator_from_kernel(&spec(dep, (1.0, 2.0))), Err(Error::Degenerate { .. })));
    let bad = BasisFunction::new("blowup", |x, _| 1.0 / x);
    assert!(matches!(wronskian_det(&[bad], 0.0), Err(Error::Evaluation { .. })));
}

#[test]
fn spec_shape_is_checked() {
    assert!(KernelSpec::new(vec![BasisFunction::sin()], (0.0, 1.0), 15).is_err());
    assert!(KernelSpec::new(vec![BasisFunction::sin()], (1.0, 1.0), 16).is_err());
    assert!(KernelSpec::new(vec![], (0.0, 1.0), 16).is_err());
    let seven = (0..7).map(|k| BasisFunction::exp(k as f64)).collect();
    assert!(KernelSpec::new(seven, (0.0, 1.0), 16).is_err());
}

#[test]
fn constructed_operators() {
    let op = operator_from_kernel(&spec(
        vec![BasisFunction::from_catalog("1").unwrap(), BasisFunction::from_catalog("x").unwrap()],
        (0.0, 1.0),
    ))
    .unwrap();
    for c in &op.coeffs {
        assert_eq!(c.len(), 3);
        assert!(c[0].abs() < 1e-15 && c[1].abs() < 1e-15 && c[2] == 1.0);
    }
    let op = operator_from_kernel(&spec(
        vec![BasisFunction::polynomial(vec![0.0, 1.0]), BasisFunction::polynomial(vec![0.0, 0.0, 1.0])],
        (1.0, 2.0),
    ))
    .unwrap();
    for (x, c) in op.xs.iter().zip(&op.coeffs) {
        assert!((c[1] + 2.0 / x).abs() < 1e-12, "x = {x}");
        assert!((c[0] - 2.0 / (x * x)).abs() < 1e-12, "x = {x}");
    }
    let csv = op.to_csv().to_csv_string();
    assert!(csv.starts_with("x,c0,c1,c2\n"));
}

#[test]
fn membership() {
    let (s, r) = (BasisFunction::sin(), BasisFunction::sqrt());
    let op = operator_from_kernel(&spec(vec![s.clone(), r.clone()], (0.5, 1.4))).unwrap();
    assert!(membership_test(&op, &s, (0.5, 1.4)).unwrap() < 1e-8);
    let combo = BasisFunction::new("3sin-2sqrt", {
        let (s, r) = (s.clone(), r.clone());
        move |x, k| 3.0 * s.eval(x, k) - 2.0 * r.eval(x, k)
    });
    assert!(membership_test(&op, &combo, (0.5, 1.4)).unwrap() < 1e-8);
    assert!(membership_test(&op, &BasisFunction::cos(), (0.5, 1.4)).unwrap() > 1e-3);
    assert!(matches!(membership_test(&op, &s, (0.4, 1.0)), Err(Error::Domain { .. })));

    let lin = operator_from_kernel(&spec(
        vec![BasisFunction::from_catalog("1").unwrap(), BasisFunction::from_catalog("x").unwrap()],
        (0.0, 2.0),
    ))
    .unwrap();
    let cube = BasisFunction::polynomial(vec![0.0, 0.0, 0.0, 1.0]);
    assert!((membership_test(&lin, &cube, (0.0, 2.0)).unwrap() - 12.0).abs() < 1e-12);
}

#[test]
fn finite_difference_fallback_builds_the_same_operator() {
    let exact = operator_from_kernel(&spec(vec![BasisFunction::sin(), BasisFunction::sqrt()], (0.5, 1.4))).unwrap();
    let fd = operator_from_kernel(&spec(
        vec![
            BasisFunction::finite_difference("sin", f64::sin, FD_STEP),
            BasisFunction::finite_difference("sqrt", f64::sqrt, FD_STEP),
        ],
        (0.5, 1.4),
    ))
    .unwrap();
    for (a, b) in exact.coeffs.iter().zip(&fd.coeffs) {
        for (p, q) in a.iter().zip(b) {
            assert!((p - q).abs() < 1e-6);
        }
    }
}

#[test]
fn sin_sqrt_reference_form_is_reported_not_trusted() {
    let rep = sin_sqrt_reference_comparison(64).unwrap();
    assert!(rep.constructed_residual < 1e-8);
    // the hand-written form does not annihilate either kernel member
    assert!(!rep.agrees(1e-6));
    assert!(rep.reference_residual_sin > 1e-2);
    assert!(rep.reference_residual_sqrt > 1e-2);
    // W = (sin x − 2x cos x)/(2√x) vanishes where tan x = 2x
    assert_eq!(rep.wronskian_zeros.len(), 1);
    let z = rep.wronskian_zeros[0];
    assert!((z.tan() - 2.0 * z).abs() < 1e-9, "{z}");
}

#[test]
fn wronskian_zeros_between_samples() {
    let s = spec(vec![BasisFunction::sin(), BasisFunction::cos()], (0.0, 3.0));
    assert!(wronskian_zeros(&s).unwrap().is_empty());
    // W(1, x^2) = 2x changes sign at 0
    let s = spec(vec![BasisFunction::polynomial(vec![1.0]), BasisFunction::polynomial(vec![0.0, 0.0, 1.0])], (-1.0, 0.9));
    let z = wronskian_zeros(&s).unwrap();
    assert_eq!(z.len(), 1);
    assert!(z[0].abs() < 1e-12);
}

#[test]
fn polynomial_kernels_agree_with_exact_construction() {
    let kernels: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![0, 1], vec![0, 0, 1]],
        vec![vec![1, 1], vec![0, 0, 0, 1], vec![2, 0, 1]],
        vec![vec![1], vec![0, 1], vec![0, 0, 1], vec![0, 0, 0, 0, 1]],
    ];
    for k in kernels {
        let exact = exact_operator_from_polynomials(&k.iter().map(|c| UPoly::from_ints(c)).collect::<Vec<_>>()).unwrap();
        let basis = k.iter().map(|c| BasisFunction::polynomial(c.iter().map(|&v| v as f64).collect())).collect();
        let op = operator_from_kernel(&spec(basis, (1.0, 2.0))).unwrap();
        for (x, c) in op.xs.iter().zip(&op.coeffs) {
            for (j, v) in c.iter().enumerate() {
                let e = exact.coeff(j).eval(*x);
                assert!((v - e).abs() < 1e-12 * (1.0 + e.abs()), "{k:?} c{j} at {x}: {v} vs {e}");
            }
        }
    }
    assert!(exact_operator_from_polynomials(&[UPoly::from_ints(&[0, 1]), UPoly::from_ints(&[0, 3])]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_is_linear(alpha in -5.0f64..5.0, beta in -5.0f64..5.0) {
        let (s, r) = (BasisFunction::sin(), BasisFunction::sqrt());
        let op = operator_from_kernel(&spec(vec![s.clone(), r.clone()], (0.5, 1.4))).unwrap();
        let combo = BasisFunction::new("combo", {
            let (s, r) = (s.clone(), r.clone());
            move |x, k| alpha * s.eval(x, k) + beta * r.eval(x, k)
        });
        let w = (0.5, 1.4);
        let lhs = membership_test(&op, &combo, w).unwrap();
        let rhs = alpha.abs() * membership_test(&op, &s, w).unwrap() + beta.abs() * membership_test(&op, &r, w).unwrap();
        prop_assert!(lhs <= rhs + 1e-12);
    }

    #[test]
    fn kernel_dimension_equals_order(c1 in 0.3f64..2.0, c2 in -2.0f64..-0.3, extra in 2.5f64..4.0) {
        let basis = vec![BasisFunction::exp(c1), BasisFunction::exp(c2)];
        let op = operator_from_kernel(&spec(basis, (0.0, 1.0))).unwrap();
        let psi = BasisFunction::exp(extra);
        let scale = (0..op.xs.len()).map(|i| op.scale_at(i, &psi)).fold(0.0, f64::max);
        prop_assert!(membership_test(&op, &psi, (0.0, 1.0)).unwrap() > 1e-3 * scale);
    }
}
