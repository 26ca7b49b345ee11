use std::f64::consts::PI;

use integrability_core::numerics::{Grid1D, SampledField, Stencil};
use integrability_core::transforms::*;
use integrability_core::Error;
use proptest::prelude::*;

/// Central derivative of order `k` (accuracy 8) of a one-variable callable.
fn d(k: usize, f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    Stencil::central(k, 8).unwrap().apply(f, x, h)
}

#[test]
fn quadrature_reduction_of_y_double_prime_eq_2y3() {
    // F = y^4/2, E = 0; decreasing branch through (1, 1) is y = 1/x
    let p = quadrature_reduce(|y| 2.0 * y.powi(3), |y| 0.5 * y.powi(4), (0.25, 4.0), 0.0, Branch::Decreasing, (1.0, 1.0)).unwrap();
    for y in [0.25, 0.5, 1.0, 2.0, 4.0] {
        assert!((p.x_at(y).unwrap() - 1.0 / y).abs() < 1e-9, "y = {y}");
    }
    for x in [0.3, 0.7, 1.0, 2.5, 3.9] {
        assert!((p.y_at(x).unwrap() - 1.0 / x).abs() < 1e-6, "x = {x}");
    }
    assert!(matches!(p.y_at(10.0), Err(Error::Domain { .. })));
    let t = p.table(9).unwrap();
    assert_eq!(t.column("y").unwrap().len(), 9);
}

#[test]
fn quadrature_reduction_of_oscillator_and_free_motion() {
    // y'' = −y, F = −y²/2, E = ½: x(y) = arcsin y, the endpoint y = 1 is a turning point
    let p = quadrature_reduce(|y| -y, |y| -0.5 * y * y, (0.0, 1.0), 0.5, Branch::Increasing, (0.0, 0.0)).unwrap();
    assert!((p.x_at(1.0).unwrap() - p.x_at(0.0).unwrap() - PI / 2.0).abs() < 1e-6);
    assert!((p.x_at(0.5).unwrap() - 0.5f64.asin()).abs() < 1e-9);

    let free = quadrature_reduce(|_| 0.0, |_| 0.0, (-2.0, 3.0), 0.5, Branch::Increasing, (0.0, 0.0)).unwrap();
    for x in [-1.5, 0.0, 2.0] {
        assert!((free.y_at(x).unwrap() - x).abs() < 1e-10);
    }

    // range extends past the turning point at y = 1
    match quadrature_reduce(|y| -y, |y| -0.5 * y * y, (0.0, 1.5), 0.5, Branch::Increasing, (0.0, 0.0)) {
        Err(Error::Domain { msg, .. }) => assert!(msg.contains("y = 1"), "{msg}"),
        other => panic!("{:?}", other.err()),
    }
    // F is not an antiderivative of f
    assert!(quadrature_reduce(|y| y, |y| y, (0.0, 1.0), 1.0, Branch::Increasing, (0.0, 0.0)).is_err());
}

#[test]
fn hodograph_linear_profile() {
    let prof = MonotoneProfile::named("linear", (-50.0, 50.0)).unwrap();
    assert_eq!(prof.breaking_time(), 0.5);
    let u = |x: f64, t: f64| hodograph_solve(&prof, x, t).unwrap().u;
    for (x, t) in [(0.3, 0.1), (-1.0, 0.4), (2.0, 0.0)] {
        assert!((u(x, t) - x / (1.0 - 2.0 * t)).abs() < 1e-12);
    }
    let h = 1e-3;
    for x in [-1.0, -0.2, 0.5, 1.0] {
        for t in [0.05, 0.2, 0.3] {
            let ut = d(1, |s| u(x, s), t, h);
            let ux = d(1, |s| u(s, t), x, h);
            assert!((ut - 2.0 * u(x, t) * ux).abs() < 1e-10, "x = {x}, t = {t}");
        }
    }
}

#[test]
fn hodograph_cubic_profile_and_breaking() {
    let prof = MonotoneProfile::named("cubic", (-5.0, 5.0)).unwrap();
    assert!((prof.breaking_time() - 0.5).abs() < 1e-12);
    let s = hodograph_solve(&prof, 0.0, 0.0).unwrap();
    assert_eq!(s.u, 0.0);
    assert!(s.residual < 1e-12);
    // past breaking: u³ + u − 20u = 0 has roots 0, ±√19
    match hodograph_solve(&prof, 0.0, 10.0) {
        Err(Error::ShockFormed { roots, t_break, .. }) => {
            assert_eq!(roots.len(), 3);
            let r19 = 19f64.sqrt();
            for (r, e) in roots.iter().zip([-r19, 0.0, r19]) {
                assert!((r - e).abs() < 1e-12, "{roots:?}");
            }
            assert!((t_break - 0.5).abs() < 1e-12);
        }
        other => panic!("{other:?}"),
    }
    assert!(has_broken(&prof, 0.5) && !has_broken(&prof, 0.49));
    assert!(matches!(hodograph_solve(&prof, 1000.0, 0.0), Err(Error::Domain { .. })));
    assert!(MonotoneProfile::new(|u| u * u, |u| 2.0 * u, (-1.0, 1.0)).is_err());
}

#[test]
fn hodograph_mirrors_the_profile_at_time_zero() {
    for name in ["linear", "cubic", "sinh"] {
        let prof = MonotoneProfile::named(name, (-2.0, 2.0)).unwrap();
        for i in 0..=40 {
            let u = -1.9 + 3.8 * i as f64 / 40.0;
            let x = prof.phi(u);
            let back = hodograph_solve(&prof, x, 0.0).unwrap().u;
            assert!((back - u).abs() < 1e-10, "{name}: {u} -> {back}");
        }
    }
}

fn grid2(n: usize, f: impl Fn(f64, f64) -> f64) -> Field2D {
    Field2D::from_fn((n, n), (0.0, 1.0), (0.0, 1.0), f).unwrap()
}

#[test]
fn thomas_linearization() {
    let zero = grid2(16, |_, _| 0.0);
    assert!(thomas_linearize(&zero).values.iter().all(|&v| v == 1.0));
    let field = grid2(32, |x, y| (3.0 * x).sin() * (2.0 * y).cos() + 0.1 * x * y);
    let back = thomas_delinearize(&thomas_linearize(&field)).unwrap();
    for (a, b) in field.values.iter().zip(&back.values) {
        assert!((a - b).abs() < 1e-14);
    }
    let bad = grid2(16, |x, _| x - 0.5);
    assert!(matches!(thomas_delinearize(&bad), Err(Error::Positivity { .. })));

    // θ = e^{k2 y} h(x) + f̂(y) with k1 = 0, so k2 = −α
    let alpha = 0.7;
    let p = ThomasParams::new(alpha, 0.0, 0.0);
    let sol = thomas_general_solution(p, |y| 2.0 + y.sin(), |x| 1.5 + x.cos()).unwrap();
    let psi = grid2(128, |x, y| sol.psi(x, y));
    assert!(thomas_residual(&psi, alpha, 0.0, 8).unwrap() < 1e-6);
    let theta = grid2(128, |x, y| sol.theta(x, y));
    assert!(linear_residual(&theta, alpha, 0.0, 8).unwrap() < 1e-6);
}

#[test]
fn thomas_general_solution_cases() {
    // f̂ = 0, h = sin, k2 = 1
    let p = ThomasParams::new(-1.0, 0.0, 0.0);
    assert_eq!(p.k2, 1.0);
    let sol = thomas_general_solution(p, |_| 0.0, f64::sin).unwrap();
    let phi = grid2(128, |x, y| sol.phi(x, y));
    assert!(reduced_residual(&phi, &p, 8).unwrap() < 1e-6);
    // k1 = −α gives k2 = 0 and the separable φ = f̂(y) + h(x)
    let p = ThomasParams::new(0.4, 0.0, -0.4);
    assert_eq!(p.k2, 0.0);
    let sol = thomas_general_solution(p, f64::cos, |x| x * x).unwrap();
    assert!((sol.phi(0.3, 0.2) - (0.2f64.cos() + 0.09)).abs() < 1e-15);
    let phi = grid2(128, |x, y| sol.phi(x, y));
    assert!(reduced_residual(&phi, &p, 8).unwrap() < 1e-6);
    // h = 0 leaves φ = f̂(y)
    let sol = thomas_general_solution(p, f64::exp, |_| 0.0).unwrap();
    assert_eq!(sol.phi(0.9, 0.5), 0.5f64.exp());
    // θ solves the linear equation for general k1
    let p = ThomasParams::new(0.5, 0.0, 1.3);
    let sol = thomas_general_solution(p, |y| 3.0 + y, |x| 1.0 + 0.5 * x.sin()).unwrap();
    let theta = grid2(128, |x, y| sol.theta(x, y));
    assert!(linear_residual(&theta, p.alpha, 0.0, 8).unwrap() < 1e-6);
    let psi = grid2(128, |x, y| sol.psi(x, y));
    assert!(thomas_residual(&psi, p.alpha, 0.0, 8).unwrap() < 1e-6);

    assert!(matches!(thomas_general_solution(ThomasParams::new(1.0, 0.5, 0.0), |_| 1.0, |_| 1.0), Err(Error::Config { .. })));
    let mut skew = ThomasParams::new(1.0, 0.0, 0.0);
    skew.k2 = 5.0;
    assert!(thomas_general_solution(skew, |_| 1.0, |_| 1.0).is_err());
}

#[test]
fn thomas_residual_converges_at_stencil_order() {
    let p = ThomasParams::new(0.5, 0.0, 0.2);
    let sol = thomas_general_solution(p, |y| 2.0 + y.sin(), |x| 1.0 + 0.5 * (2.0 * x).cos()).unwrap();
    for acc in [2usize, 4] {
        let r = |n| thomas_residual(&grid2(n, |x, y| sol.psi(x, y)), p.alpha, 0.0, acc).unwrap();
        let ratio = r(17) / r(33);
        let expect = 2f64.powi(acc as i32);
        assert!(ratio > 0.8 * expect && ratio < 1.25 * expect, "accuracy {acc}: ratio {ratio}");
    }
}

fn periodic(n: usize, f: impl Fn(f64) -> f64) -> SampledField {
    SampledField::from_fn(Grid1D::periodic_2pi(n).unwrap(), f)
}

#[test]
fn cole_hopf_pair() {
    let u = cole_hopf(&periodic(64, |_| 3.0)).unwrap();
    assert!(u.max_abs() < 1e-14);
    let u = cole_hopf(&periodic(64, |x| 2.0 + x.cos())).unwrap();
    let g = u.grid().clone();
    for (j, v) in u.real_parts().iter().enumerate() {
        let x = g.x(j);
        assert!((v + x.sin() / (2.0 + x.cos())).abs() < 1e-10);
    }
    let u0 = periodic(64, |x| 0.3 * x.sin());
    let back = cole_hopf(&inverse_cole_hopf(&u0).unwrap()).unwrap();
    assert!(back.max_abs_diff(&u0) < 1e-10);
    let w = inverse_cole_hopf(&u0).unwrap();
    assert_eq!(w.values()[0].re, 1.0);

    assert!(matches!(cole_hopf(&periodic(64, |x| x.cos())), Err(Error::Positivity { .. })));
    match inverse_cole_hopf(&periodic(64, |x| 0.2 + x.sin())) {
        Err(Error::Periodicity { mean, .. }) => assert!((mean - 0.2).abs() < 1e-12),
        other => panic!("{other:?}"),
    }
}

#[test]
fn burgers_scaling() {
    assert!(matches!(scale_burgers(0.0), Err(Error::Degenerate { .. })));
    let one = scale_burgers(1.0).unwrap();
    let p = Xtu { x: 0.3, t: 1.2, u: -0.7 };
    assert_eq!(one.forward(p), p);
    let (s, inv) = (scale_burgers(2.0).unwrap(), scale_burgers(0.5).unwrap());
    let q = inv.forward(s.forward(p));
    assert!((q.x - p.x).abs() < 1e-15 && (q.t - p.t).abs() < 1e-15 && (q.u - p.u).abs() < 1e-15);

    // viscous solution at ε = 2: u = ε (log w)_x with w_t = ε w_xx
    let eps = 2.0;
    let u = move |x: f64, t: f64| {
        let e = (-eps * t).exp();
        eps * (-0.5 * x.sin() * e) / (2.0 + 0.5 * x.cos() * e)
    };
    let h = 1e-3;
    for (x, t) in [(0.3, 0.1), (1.7, 0.4)] {
        let r = d(1, |s| u(x, s), t, h) - 2.0 * u(x, t) * d(1, |s| u(s, t), x, h) - eps * d(2, |s| u(s, t), x, h);
        assert!(r.abs() < 1e-8, "viscous oracle residual {r}");
    }
    let ut = s.transform_solution(u);
    for (x, t) in [(0.6, 0.8), (3.4, 3.2), (-1.0, 1.0)] {
        let r = d(1, |s| ut(x, s), t, h) - 2.0 * ut(x, t) * d(1, |s| ut(s, t), x, h) - d(2, |s| ut(s, t), x, h);
        assert!(r.abs() < 1e-6, "unit-viscosity residual {r}");
    }
    // the printed map (u = εũ, t̃ = ε²t) leaves the viscosity at ε
    let printed = move |x: f64, t: f64| u(x / eps, t / (eps * eps)) / eps;
    let (x, t) = (0.6, 0.8);
    let r = d(1, |s| printed(x, s), t, h) - 2.0 * printed(x, t) * d(1, |s| printed(s, t), x, h) - d(2, |s| printed(s, t), x, h);
    assert!(r.abs() > 1e-3);
}

#[test]
fn inviscid_reduction() {
    let id = reduce_to_inviscid(|u| u);
    assert_eq!(id.v(0.37), 0.37);
    let h = 1e-3;
    let residual = |v: &dyn Fn(f64, f64) -> f64, x: f64, t: f64| {
        d(1, |s| v(x, s), t, h) - v(x, t) * d(1, |s| v(s, t), x, h)
    };

    // φ = 2u: u solves the hodograph problem, v = 2u solves v_t = v v_x
    let prof = MonotoneProfile::named("cubic", (-3.0, 3.0)).unwrap();
    let red = reduce_to_inviscid(|u| 2.0 * u);
    let v = |x: f64, t: f64| red.v(hodograph_solve(&prof, x, t).unwrap().u);
    for (x, t) in [(0.5, 0.1), (-1.0, 0.3), (2.0, 0.2)] {
        assert!(residual(&v, x, t).abs() < 1e-6);
    }

    // φ = c: u = u0(x + ct) is transported and v ≡ c
    let c = 1.5;
    let u = |x: f64, t: f64| characteristic_solve(|s| (s).tanh(), |_| c, x, t, (-1.0, 1.0)).unwrap();
    for (x, t) in [(0.2, 0.5), (-0.7, 1.1)] {
        assert!((u(x, t) - (x + c * t).tanh()).abs() < 1e-12);
        let ut = d(1, |s| u(x, s), t, h);
        assert!((ut - c * d(1, |s| u(s, t), x, h)).abs() < 1e-8);
    }
    let cst = reduce_to_inviscid(move |_| c);
    let vc = |x: f64, t: f64| cst.v(u(x, t));
    assert!(residual(&vc, 0.1, 0.2).abs() < 1e-12);

    // φ = u², u0 = 0.5 tanh x, before characteristics cross
    let red = reduce_to_inviscid(|u| u * u);
    let u2 = |x: f64, t: f64| characteristic_solve(|s| 0.5 * s.tanh(), |u| u * u, x, t, (-0.6, 0.6)).unwrap();
    let v2 = |x: f64, t: f64| red.v(u2(x, t));
    for (x, t) in [(0.3, 0.4), (-0.5, 0.8)] {
        assert!(residual(&v2, x, t).abs() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cole_hopf_round_trip(a in 0.0f64..0.7, b in -0.7f64..0.7, k in 1usize..=2, n in prop::sample::select(vec![128usize, 256])) {
        // log w must be resolved on the grid
        prop_assume!(a.abs() + b.abs() < 0.7);
        let w = periodic(n, |x| 1.0 + a * (k as f64 * x).cos() + b * x.sin());
        let u = cole_hopf(&w).unwrap();
        let w2 = inverse_cole_hopf(&u).unwrap();
        let w0 = w.values()[0].re;
        let scaled = w.map(|z| z / w0);
        prop_assert!(w2.max_abs_diff(&scaled) < 1e-10 * scaled.max_abs());
        prop_assert!(cole_hopf(&w2).unwrap().max_abs_diff(&u) < 1e-10);
    }

    #[test]
    fn hodograph_below_breaking_has_one_root(x in -3.0f64..3.0, frac in 0.0f64..0.95) {
        let prof = MonotoneProfile::named("cubic", (-4.0, 4.0)).unwrap();
        let t = frac * prof.breaking_time();
        let s = hodograph_solve(&prof, x, t).unwrap();
        prop_assert!((prof.phi(s.u) - 2.0 * t * s.u - x).abs() < 1e-12);
    }
}
