use num::Complex;
use proptest::prelude::*;

use integrability_core::numerics::{integrate, spectral_derivative, Grid1D, IntegratorConfig, SampledField, Stencil};
use integrability_core::spectral::*;
use integrability_core::Error;

type C = Complex<f64>;

fn periodic(n: usize, f: impl Fn(f64) -> f64) -> SampledField {
    SampledField::from_fn(Grid1D::periodic_2pi(n).unwrap(), f)
}

#[test]
fn heat_examples() {
    let u0 = periodic(64, f64::sin);
    let u = heat_solve(&u0, 1.0).unwrap();
    assert!(u.max_abs_diff(&periodic(64, |x| (-1.0f64).exp() * x.sin())) < 1e-12);
    assert_eq!(heat_solve(&u0, 0.0).unwrap(), u0);

    let u0 = periodic(64, |x| x.sin() + 0.5 * (3.0 * x).sin());
    let expect = periodic(64, |x| (-0.2f64).exp() * x.sin() + 0.5 * (-1.8f64).exp() * (3.0 * x).sin());
    assert!(heat_solve(&u0, 0.2).unwrap().max_abs_diff(&expect) < 1e-12);

    assert!(matches!(heat_solve(&u0, -0.1), Err(Error::Domain { .. })));
}

#[test]
fn heat_dilation_symmetry() {
    // w(x, t) = u(2x, 4t) on the same grid is again a heat solution
    let n = 64;
    let u0 = periodic(n, |x| x.sin() + 0.3 * (2.0 * x).cos());
    let w = |t: f64| {
        let u = heat_solve(&u0, 4.0 * t).unwrap();
        let vals: Vec<f64> = (0..n).map(|j| u.values()[(2 * j) % n].re).collect();
        SampledField::from_real(*u0.grid(), &vals).unwrap()
    };
    let (t, h) = (0.1, 5e-4);
    let st = Stencil::central(1, 4).unwrap();
    let r = st.half_width as i64;
    let mut wt = vec![0.0; n];
    for (c, j) in st.weights.iter().zip(-r..=r) {
        for (a, b) in wt.iter_mut().zip(w(t + j as f64 * h).values()) {
            *a += c * b.re / h;
        }
    }
    let wxx = spectral_derivative(&w(t), 2).unwrap();
    let res = wt.iter().zip(wxx.values()).map(|(a, b)| (a - b.re).abs()).fold(0.0, f64::max);
    assert!(res < 1e-9, "dilated residual {res}");
}

#[test]
fn burgers_pipeline() {
    let zero = periodic(256, |_| 0.0);
    assert!(burgers_solve(&zero, 0.7, 1.0).unwrap().max_abs() < 1e-15);

    let u0 = periodic(256, |x| 0.5 * x.sin());
    let rep = burgers_residual(&u0, 0.5, 1.0).unwrap();
    assert!(rep.residual < 1e-5, "residual {}", rep.residual);
    assert!(rep.mass_drift < 1e-10);

    let pipe = burgers_solve(&u0, 0.5, 1.0).unwrap();
    let direct = burgers_direct(&u0, 0.5, 1.0, 1e-4).unwrap();
    let gap = pipe.max_abs_diff(&direct);
    assert!(gap < 1e-5, "pipeline vs direct {gap}");

    for t in [0.25, 0.5, 0.75, 1.0] {
        let u = burgers_solve(&u0, t, 1.0).unwrap();
        assert!((u.integral() - u0.integral()).norm() < 1e-10);
    }
    assert!(matches!(burgers_solve(&periodic(256, |x| 0.1 + x.sin()), 0.5, 1.0), Err(Error::Periodicity { .. })));
}

#[test]
fn burgers_small_viscosity_matches_direct() {
    let u0 = periodic(256, |x| 0.3 * x.sin());
    let pipe = burgers_solve(&u0, 0.4, 0.5).unwrap();
    let direct = burgers_direct(&u0, 0.4, 0.5, 1e-4).unwrap();
    assert!(pipe.max_abs_diff(&direct) < 1e-6);
}

fn ks() -> Vec<f64> {
    (0..=80).map(|i| -2.0 + 0.05 * i as f64).collect()
}

#[test]
fn dispersion_examples() {
    let kdv = DispersionSpec::parse("ut - uxxx").unwrap();
    let rep = dispersion_relation(&kdv, &ks(), 1e-6).unwrap();
    assert!(rep.dispersive && !rep.dissipative);
    let b = &rep.branches[0];
    for (s, k) in rep.ks.iter().enumerate() {
        assert!((b.omega[s] - C::new(k.powi(3), 0.0)).norm() < 1e-12);
        if let Some(w) = b.omega_pp[s] {
            assert!((w.re - 6.0 * k).abs() < 1e-6, "k = {k}: {w}");
        }
    }

    let c = 1.7;
    let adv = DispersionSpec::parse(&format!("ut - {c}*ux")).unwrap();
    let rep = dispersion_relation(&adv, &ks(), 1e-6).unwrap();
    assert!(!rep.dispersive);
    for (s, k) in rep.ks.iter().enumerate() {
        assert!((rep.branches[0].omega[s].re + c * k).abs() < 1e-12);
    }
    assert!(rep.branches[0].max_abs_re_omega_pp < 1e-6);

    let wave = DispersionSpec::parse("utt - uxx").unwrap();
    let rep = dispersion_relation(&wave, &ks(), 1e-6).unwrap();
    assert!(!rep.dispersive);
    assert_eq!(rep.branches.len(), 2);
    for b in &rep.branches {
        assert!(b.max_abs_re_omega_pp < 1e-6);
        let slope = (b.omega[80].re - b.omega[0].re) / 4.0;
        assert!((slope.abs() - 1.0).abs() < 1e-12, "branch followed through the crossing");
    }
    assert!(!rep.warnings.is_empty(), "ω = ±k cross at k = 0");

    let heat = DispersionSpec::parse("ut - uxx").unwrap();
    let rep = dispersion_relation(&heat, &ks(), 1e-6).unwrap();
    assert!(rep.dissipative && !rep.dispersive);

    let kg = DispersionSpec::parse("utt - uxx + u").unwrap();
    let fine: Vec<f64> = (0..=400).map(|i| -2.0 + 0.01 * i as f64).collect();
    let rep = dispersion_relation(&kg, &fine, 1e-6).unwrap();
    assert!(rep.dispersive);
    for (s, k) in rep.ks.iter().enumerate() {
        if let Some(w) = rep.branches[1].omega_pp[s] {
            assert!((w.re.abs() - (1.0 + k * k).powf(-1.5)).abs() < 1e-6, "k = {k}: {w}");
        }
    }
}

#[test]
fn dispersion_parse_and_errors() {
    let s = DispersionSpec::parse("ut + 2ux - 0.5*uxxx").unwrap();
    assert_eq!(s.terms.len(), 3);
    assert_eq!(s.terms[2].coeff, -0.5);
    assert_eq!(s.terms[2].x_orders, vec![3]);
    assert!(DispersionSpec::parse("uxx").is_err());
    assert!(DispersionSpec::parse("ut - uqq").is_err());
    assert!(DispersionSpec::parse("").is_err());
    assert!(dispersion_relation(&s, &[0.0, 0.1, 0.3], 1e-6).is_err());
    // ω-degree drops where the leading coefficient vanishes
    let deg = DispersionSpec::parse("uttx - uxx").unwrap();
    assert!(matches!(deg.roots_at(&[0.0]), Err(Error::Degenerate { .. })));
}

#[test]
fn dispersion_hessian_in_two_dimensions() {
    let s = DispersionSpec::parse("ut - uxxx - uyyy").unwrap();
    assert_eq!(s.dim, 2);
    let (k, l) = (0.7, -0.4);
    let out = dispersion_hessian(&s, &[k, l], 1e-3).unwrap();
    assert_eq!(out.len(), 1);
    assert!((out[0].0.re - (k.powi(3) + l.powi(3))).abs() < 1e-12);
    assert!((out[0].1.re - 36.0 * k * l).abs() < 1e-5);

    // ω = ±|k| is a cone: degenerate Hessian
    let wave = DispersionSpec::parse("utt - uxx - uyy").unwrap();
    for (_, det) in dispersion_hessian(&wave, &[0.6, 0.8], 1e-3).unwrap() {
        assert!(det.norm() < 1e-5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dispersion_root_count_matches_degree(c in prop::collection::vec(-3.0f64..3.0, 4), k in -3.0f64..3.0) {
        let src = format!("uttt + {}*utt + {}*utx + {}*uxxx + {}*u", c[0], c[1], c[2], c[3]);
        let s = DispersionSpec::parse(&src.replace("+ -", "- ")).unwrap();
        let roots = s.roots_at(&[k]).unwrap();
        prop_assert_eq!(roots.len(), 3);
        let p = s.omega_polynomial(&[k]);
        let scale = p.iter().map(|c| c.norm()).sum::<f64>();
        for r in roots {
            let v = p.iter().rev().fold(C::new(0.0, 0.0), |a, c| a * r + c);
            prop_assert!(v.norm() < 1e-10 * scale * (1.0 + r.norm()).powi(3));
        }
    }

    #[test]
    fn heat_semigroup(a in 0.0f64..1.0, b in 0.0f64..1.0, c in prop::collection::vec(-1.0f64..1.0, 4)) {
        let u0 = periodic(64, |x| c[0] * x.sin() + c[1] * (2.0 * x).cos() + c[2] * (5.0 * x).sin() + c[3]);
        let once = heat_solve(&u0, a + b).unwrap();
        let twice = heat_solve(&heat_solve(&u0, a).unwrap(), b).unwrap();
        prop_assert!(once.max_abs_diff(&twice) < 1e-12);
    }
}

fn window(x: (f64, f64), t: (f64, f64)) -> ResidualWindow {
    ResidualWindow { x, t, nx: 21, nt: 5 }
}

#[test]
fn kdv_soliton_residual_converges() {
    let u = kdv_soliton(1.0);
    let rep = pde_residual(&PdeSpec::kdv(), &u, &window((-4.0, 4.0), (0.0, 0.5)), 4, 0.05, 3).unwrap();
    for row in &rep.rows[1..] {
        assert!(row.ratio.unwrap() >= 12.0, "{:?}", rep.rows);
    }
    assert!(rep.max_residual < 2e-4, "{:?}", rep.rows);
    let zero = |_: f64, _: f64| C::new(0.0, 0.0);
    let rep = pde_residual(&PdeSpec::kdv(), &zero, &window((-4.0, 4.0), (0.0, 0.5)), 4, 0.1, 2).unwrap();
    assert_eq!(rep.max_residual, 0.0);
    // a sech² of the wrong speed is not a solution
    let wrong = |x: f64, t: f64| C::new(2.0 / (x + t).cosh().powi(2), 0.0);
    let rep = pde_residual(&PdeSpec::kdv(), &wrong, &window((-4.0, 4.0), (0.0, 0.5)), 4, 0.1, 2).unwrap();
    assert!(rep.max_residual > 0.1);
}

#[test]
fn nls_soliton_sign_and_convergence() {
    let u = nls_soliton(1.0);
    let w = window((-4.0, 4.0), (0.0, 1.0));
    let sign = resolve_nls_sign(&u, &w, 4, 0.05).unwrap();
    assert_eq!(sign.sign, 1.0);
    assert!(sign.residual_plus < 1e-4 && sign.residual_minus > 0.1);
    let rep = pde_residual(&PdeSpec::nls(sign.sign), &u, &w, 4, 0.1, 3).unwrap();
    for row in &rep.rows[1..] {
        assert!(row.ratio.unwrap() >= 12.0, "{:?}", rep.rows);
    }
    let u2 = nls_soliton(1.5);
    let rep = pde_residual(&PdeSpec::nls(1.0), &u2, &w, 6, 0.05, 2).unwrap();
    assert!(rep.max_residual < 1e-5);
}

#[test]
fn residual_errors() {
    let bad = |x: f64, _: f64| C::new(1.0 / x, 0.0);
    let w = ResidualWindow { x: (-1.0, 1.0), t: (0.0, 1.0), nx: 3, nt: 2 };
    assert!(matches!(pde_residual(&PdeSpec::heat(1.0), &bad, &w, 2, 0.1, 1), Err(Error::Evaluation { .. })));
    assert!(PdeSpec::new("x", 1.0, vec![PdeTerm::new(1.0, vec![Factor::D(3)])], 2).is_err());
}

fn jost_psi_oracle(prob: &JostProblem, x_out: f64) -> C {
    // ψ'' = (u − k²)ψ from ψ = e^{−ikx} at the right end; φ = ψe^{ikx}
    let k = prob.k;
    let (a, b) = prob.support;
    let right = b + prob.pad;
    let e = C::from_polar(1.0, -k * right);
    let de = e * C::new(0.0, -k);
    let u = prob.u.clone();
    let rhs = move |s: f64, y: &[f64]| -> integrability_core::Result<Vec<f64>> {
        let x = -s;
        let c = u(x) - k * k;
        Ok(vec![y[2], y[3], c * y[0], c * y[1]])
    };
    // s = −x, so ψ_s = −ψ_x
    let mut y = vec![e.re, e.im, -de.re, -de.im];
    let cfg = IntegratorConfig { dt: 1e-3, ..IntegratorConfig::rkf45(1e-13) };
    let mut x = right;
    for stop in [b, a, x_out] {
        if stop < x && stop >= x_out {
            y = integrate(&rhs, -x, &y, -stop, &cfg, |_, _| Ok(())).unwrap();
            x = stop;
        }
    }
    C::new(y[0], y[1]) * C::from_polar(1.0, k * x_out)
}

#[test]
fn jost_trivial_and_square_well() {
    let zero = JostProblem::new(|_| 0.0, (-1.0, 1.0), 1.0).with_grid(1.0, 1e-2);
    let sol = jost_solve(&zero, 1e-13, 30).unwrap();
    assert!(sol.phi.iter().all(|p| *p == C::new(1.0, 0.0)));

    let prob = JostProblem::square_well(-0.1, (-1.0, 1.0), 1.0);
    let sol = jost_solve(&prob, 1e-12, 30).unwrap();
    assert!(sol.gaps.len() <= 30 && *sol.gaps.last().unwrap() < 1e-12);
    for (x, p) in sol.xs.iter().zip(&sol.phi) {
        if *x > 1.0 {
            assert_eq!(*p, C::new(1.0, 0.0));
        }
    }
    for w in sol.gaps.windows(2) {
        if w[0] > 1e-14 {
            assert!(w[1] / w[0] <= sol.contraction_bound, "gaps {:?}", sol.gaps);
        }
    }
    let probe = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0];
    let oracle = jost_ode_oracle(&prob, &probe, &[], 1e-13).unwrap();
    for (x, o) in probe.iter().zip(&oracle) {
        let p = sol.at(*x).unwrap();
        assert!((p - o).norm() < 1e-8, "x = {x}: {p} vs {o}");
    }

    // oscillatory exponent against the Schrödinger equation ψ'' + k²ψ = uψ
    let osc = prob.clone().with_convention(JostConvention::Oscillatory);
    let sol = jost_solve(&osc, 1e-12, 30).unwrap();
    for x in probe {
        let o = jost_psi_oracle(&osc, x);
        assert!((sol.at(x).unwrap() - o).norm() < 1e-8, "x = {x}");
    }
    // the printed real exponent does not solve that equation
    let printed = jost_solve(&prob, 1e-12, 30).unwrap();
    assert!((printed.at(-2.0).unwrap() - jost_psi_oracle(&osc, -2.0)).norm() > 1e-3);
}

#[test]
fn jost_linear_response_and_errors() {
    let delta = |amp: f64| {
        let sol = jost_solve(&JostProblem::square_well(amp, (-1.0, 1.0), 1.0), 1e-14, 50).unwrap();
        sol.at(-1.5).unwrap() - 1.0
    };
    let ratio = (delta(2e-3) / delta(1e-3)).re;
    assert!((ratio - 2.0).abs() < 0.02, "ratio {ratio}");

    assert!(matches!(jost_solve(&JostProblem::square_well(-10.0, (-1.0, 1.0), 1.0), 1e-12, 30), Err(Error::Divergence { .. })));
    let leaky = JostProblem::new(|x| 0.01 * (-x * x).exp(), (-1.0, 1.0), 1.0);
    assert!(matches!(jost_solve(&leaky, 1e-12, 30), Err(Error::Config { .. })));
    assert!(jost_solve(&JostProblem::square_well(-0.1, (-1.0, 1.0), 0.0), 1e-12, 30).is_err());
}

#[test]
fn jost_kernel_small_argument_branch() {
    let kappa = C::new(1e-7, 0.0);
    let d = -1.0;
    // (1 − e^{2κd})/(2κ) ≈ −d(1 + κd) for tiny κ
    let k = kernel(kappa, d);
    assert!((k.re - 1.0 * (1.0 - 1e-7)).abs() < 1e-14);
    let big = kernel(C::new(1.0, 0.0), -1.0);
    assert!((big.re - (1.0 - (-2.0f64).exp()) / 2.0).abs() < 1e-15);
}
