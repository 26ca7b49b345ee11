use integrability_core::diffop::UPoly;
use integrability_core::exprjet::{parse_polynomial, rat, JetCoord, JetPolynomial, JetVectorField};
use integrability_core::numerics::{integrate, IntegratorConfig};
use integrability_core::symmetry::*;
use integrability_core::Error;
use proptest::prelude::*;

fn p(s: &str) -> JetPolynomial {
    parse_polynomial(s).unwrap()
}

fn xyy1() -> Vec<JetCoord> {
    vec![JetCoord::X, JetCoord::Y(0), JetCoord::Y(1)]
}

/// y'' = c as (1, y', c)
fn flat(c: &str) -> DynamicalSystem {
    DynamicalSystem::canonical(2, p(c)).unwrap()
}

fn cand(comps: [&str; 3]) -> SymmetryCandidate {
    SymmetryCandidate::new(JetVectorField::new(xyy1(), comps.iter().map(|s| p(s)).collect()).unwrap(), "tau")
}

#[test]
fn conservation_laws_of_free_fall() {
    let sys = flat("1");
    assert!(sys.is_canonical());
    assert!(is_conservation_law(&sys, &p("y1 - x")).unwrap().holds);
    let combined = p("(y1 - x)^2 - 2*(y + 1/2*x^2 - x*y1)");
    assert!(is_conservation_law(&sys, &combined).unwrap().holds);
    // the combination collapses to y1^2 − 2y
    assert_eq!(combined, p("y1^2 - 2*y"));
    let v = is_conservation_law(&sys, &p("y")).unwrap();
    assert!(!v.holds);
    assert_eq!(v.residual, p("y1"));
    assert!(matches!(is_conservation_law(&sys, &p("u0")), Err(Error::Domain { .. })));
}

#[test]
fn symmetries_of_free_fall() {
    let sys = flat("1");
    let shift = is_symmetry(&sys, &cand(["1", "0", "0"])).unwrap();
    assert!(shift.symmetry && !shift.trivial);
    let galilei = is_symmetry(&sys, &cand(["0", "x", "1"])).unwrap();
    assert!(galilei.symmetry && !galilei.trivial);
    // L(g1) = L(g3) = 0 and L(g2) = g3
    assert!(is_conservation_law(&sys, &p("0")).unwrap().holds);
    assert_eq!(is_conservation_law(&sys, &p("x")).unwrap().residual, p("1"));
    let own = is_symmetry(&sys, &cand(["5", "5*y1", "5"])).unwrap();
    assert!(own.symmetry && own.trivial);
    let not = is_symmetry(&sys, &cand(["0", "y", "0"])).unwrap();
    assert!(!not.symmetry);
    let json = serde_json::to_value(not.report()).unwrap();
    assert_eq!(json["symmetry"], false);
    assert_eq!(json["bracket"], not.bracket.to_string());
}

#[test]
fn scaling_by_conservation_laws() {
    let sys = flat("1");
    let g = cand(["1", "0", "0"]);
    assert_eq!(scale_symmetry(&sys, &g, &JetPolynomial::one()).unwrap().field, g.field);
    let f = p("y1 - x");
    let s = scale_symmetry(&sys, &g, &f).unwrap();
    assert_eq!(s.field, cand(["y1 - x", "0", "0"]).field);
    assert!(is_symmetry(&sys, &s).unwrap().symmetry);
    let s2 = scale_symmetry(&sys, &cand(["0", "x", "1"]), &f).unwrap();
    assert_eq!(s2.field, cand(["0", "x*(y1 - x)", "y1 - x"]).field);
    assert!(matches!(scale_symmetry(&sys, &g, &p("y")), Err(Error::Contract { .. })));
    assert!(matches!(scale_symmetry(&sys, &cand(["0", "y", "0"]), &f), Err(Error::Contract { .. })));
}

#[test]
fn g0_is_conserved() {
    let sys = flat("1");
    let c = corollary_g0_check(&sys, &cand(["1", "0", "0"])).unwrap();
    assert!(c.applies && c.conservation_law);
    assert!(c.normalized.is_some());
    let c = corollary_g0_check(&sys, &cand(["0", "x", "1"])).unwrap();
    assert!(!c.applies);
    let c = corollary_g0_check(&sys, &cand(["y1 - x", "0", "0"])).unwrap();
    assert!(c.applies && c.conservation_law && c.normalized.is_none());
    let c = corollary_g0_check(&sys, &cand(["2", "0", "2"])).unwrap();
    assert_eq!(c.normalized.unwrap(), cand(["1", "0", "1"]).field);
    let skew = DynamicalSystem::from_components(xyy1(), vec![p("2"), p("y1"), p("1")]).unwrap();
    assert!(matches!(corollary_g0_check(&skew, &cand(["1", "0", "0"])), Err(Error::Contract { .. })));
}

#[test]
fn evolutionary_symmetries_of_inviscid_burgers() {
    let kf = p("2*u0*u1");
    for phi in ["1", "u0", "u0^2", "u0^3"] {
        let kg = &p(phi) * &p("u1");
        let d = min_depth(&kf, &kg).unwrap();
        for depth in [d, d + 2] {
            assert!(pde_symmetry_check(&kf, &kg, depth).unwrap().symmetric, "phi = {phi}");
        }
    }
    let heat = pde_symmetry_check(&kf, &p("u2"), 4).unwrap();
    assert!(!heat.symmetric);
    assert_eq!(heat.bracket, p("-4*u1*u2"));
    assert!(!pde_symmetry_check(&kf, &p("u2"), 6).unwrap().symmetric);
    match pde_symmetry_check(&kf, &p("u2"), 3) {
        Err(Error::Contract { msg, .. }) => assert!(msg.contains("at least 4"), "{msg}"),
        other => panic!("{other:?}"),
    }
    // KdV flow commutes with its own translation and with itself
    let kdv = p("6*u0*u1 + u3");
    assert!(pde_symmetry_check(&kdv, &p("u1"), 5).unwrap().symmetric);
    assert!(pde_symmetry_check(&kdv, &kdv, 7).unwrap().symmetric);
}

#[test]
fn drift_of_exact_conservation_laws() {
    let osc = DynamicalSystem::from_components(vec![JetCoord::Y(0), JetCoord::Y(1)], vec![p("y1"), p("-y")]).unwrap();
    let energy = NumericCl::new("y^2 + y1^2", |_, y| y[0] * y[0] + y[1] * y[1]);
    let d = cl_drift(&osc.rhs(), &energy, &[1.0, 0.0], 0.0, 10.0, &IntegratorConfig::rk4(1e-3)).unwrap();
    assert!(d < 1e-9, "{d}");

    // y'' − 3y' + 2y = 0 with λ = 1, 2: log(y' − y) − 2x is conserved
    let lin = DynamicalSystem::canonical(2, p("3*y1 - 2*y")).unwrap();
    let log_cl = NumericCl::new("log(y1 - y) - 2x", |_, s| (s[2] - s[1]).ln() - 2.0 * s[0]);
    let d = cl_drift(&lin.rhs(), &log_cl, &[0.0, 1.0, 2.0], 0.0, 3.0, &IntegratorConfig::rk4(1e-3)).unwrap();
    assert!(d < 1e-8, "{d}");
    // closed form: y(0) = 1, y'(0) = 2 gives y = e^(2x), so F ≡ log 1 = 0
    let end = integrate(&lin.rhs(), 0.0, &[0.0, 1.0, 2.0], 3.0, &IntegratorConfig::rk4(1e-3), |_, _| Ok(())).unwrap();
    assert!((end[1] / 6f64.exp() - 1.0).abs() < 1e-9);
    assert!(log_cl.eval(3.0, &end).abs() < 1e-8);

    let free = flat("1");
    let arcsin = NumericCl::new("Arcsin", |_, s| {
        let (x, y, y1) = (s[0], s[1], s[2]);
        (y1 - x).asin() / (y + 0.5 * x * x - x * y1).powf(0.93)
    });
    let d = cl_drift(&free.rhs(), &arcsin, &[0.0, 1.0, 0.5], 0.0, 10.0, &IntegratorConfig::rk4(1e-3)).unwrap();
    assert!(d < 1e-7, "{d}");
    // c1 = y1 − x = 1.5 is outside the arcsin domain
    match cl_drift(&free.rhs(), &arcsin, &[0.0, 1.0, 1.5], 0.0, 1.0, &IntegratorConfig::rk4(1e-3)) {
        Err(Error::Domain { msg, .. }) => assert!(msg.contains("t = 0")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn drift_converges_at_fourth_order() {
    let osc = DynamicalSystem::from_components(vec![JetCoord::Y(0), JetCoord::Y(1)], vec![p("y1"), p("-y")]).unwrap();
    let energy = NumericCl::new("energy", |_, y| y[0] * y[0] + y[1] * y[1]);
    let run = |dt| cl_drift(&osc.rhs(), &energy, &[1.0, 0.0], 0.0, 10.0, &IntegratorConfig::rk4(dt)).unwrap();
    let ratio = run(0.1) / run(0.05);
    assert!(ratio >= 14.0, "{ratio}");
}

#[test]
fn reduced_equation_symmetries_are_trivial() {
    for f in [vec![1, 0, -1], vec![0, 0, 0, 1], vec![2, -3, 0, 0, 5], vec![7]] {
        let f = UPoly::from_ints(&f);
        let basis = commuting_polynomials(&f, f.degree().unwrap() + 3);
        assert_eq!(basis.len(), 1, "{f}");
        assert!(proportionality(&basis[0], &f).is_some(), "{f}");
    }
}

fn rational() -> impl Strategy<Value = integrability_core::exprjet::Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn scaled_symmetries_stay_symmetries(
        c in rational(),
        a in proptest::collection::vec(rational(), 4),
        fc in proptest::collection::vec((rational(), 0u32..=2, 0u32..=2), 1..=3),
    ) {
        // y'' = c with invariants I1 = y1 − c x and I2 = y + c x^2/2 − x y1
        let sys = DynamicalSystem::canonical(2, JetPolynomial::constant(c.clone())).unwrap();
        let cx = JetPolynomial::constant(c.clone());
        let x = JetPolynomial::var(JetCoord::X);
        let i1 = &p("y1") - &(&cx * &x);
        let i2 = &(&p("y") + &(&cx * &x.pow(2)).scale(&rat(1, 2))) - &(&x * &p("y1"));
        let f = fc.iter().fold(JetPolynomial::zero(), |acc, (k, e1, e2)| {
            &acc + &(&i1.pow(*e1) * &i2.pow(*e2)).scale(k)
        });
        prop_assert!(is_conservation_law(&sys, &f).unwrap().holds);
        let gens = [cand(["1", "0", "0"]), cand(["0", "1", "0"]), cand(["0", "x", "1"])];
        let mut comps = sys.field().components().into_iter().map(|q| q.scale(&a[3])).collect::<Vec<_>>();
        for (g, k) in gens.iter().zip(&a) {
            for (slot, q) in comps.iter_mut().zip(g.field.components()) {
                *slot = &*slot + &q.scale(k);
            }
        }
        let g = SymmetryCandidate::new(JetVectorField::new(xyy1(), comps).unwrap(), "tau");
        prop_assert!(is_symmetry(&sys, &g).unwrap().symmetry);
        let fg = scale_symmetry(&sys, &g, &f).unwrap();
        prop_assert!(is_symmetry(&sys, &fg).unwrap().symmetry);
    }

    #[test]
    fn polynomial_commutants_are_multiples(coeffs in proptest::collection::vec(-5i64..=5, 1..=5)) {
        let f = UPoly::from_ints(&coeffs);
        prop_assume!(!f.is_zero());
        let basis = commuting_polynomials(&f, f.degree().unwrap() + 2);
        prop_assert_eq!(basis.len(), 1);
        prop_assert!(proportionality(&basis[0], &f).is_some());
    }
}
