//! The acceptance suite as a library: every criterion returns its measured
//! values against pinned bounds. Shared by the `verify-all` subcommand and
//! the acceptance test target.

use std::time::Instant;

use num::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffop::{commutator, compose, LinearDiffOp, RationalFn, UPoly};
use crate::error::{config, Result};
use crate::exprjet::{parse_polynomial, rat, JetCoord, JetPolynomial, JetVectorField, Rat};
use crate::numerics::{integrate, Grid1D, IntegratorConfig, SampledField, Stencil};
use crate::resonance::{closed_form, invariants, jacobi, quartet_invariants, quartet_rhs, triad_rhs, QuartetSystem, TriadSystem};
use crate::spectral::{
    burgers_direct, burgers_residual, burgers_solve, dispersion_relation, heat_solve, jost_ode_oracle, jost_solve,
    kdv_soliton, nls_soliton, pde_residual, resolve_nls_sign, DispersionSpec, JostProblem, PdeSpec, ResidualWindow,
};
use crate::symmetry::{is_conservation_law, is_symmetry, min_depth, pde_symmetry_check, scale_symmetry, DynamicalSystem, SymmetryCandidate};
use crate::threebody as tb;
use crate::transforms::{hodograph_solve, MonotoneProfile};
use crate::wronskian::{
    exact_operator_from_polynomials, membership_test, operator_from_kernel, sin_sqrt_reference_comparison, BasisFunction,
    KernelSpec,
};
use crate::Error;

pub const CRITERIA: u32 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Fast,
    Full,
}

impl Level {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(config("verify", format!("unknown level {s:?}; expected fast or full"))),
        }
    }

    fn grid(self, n: usize) -> usize {
        match self {
            Level::Fast => n.min(128),
            Level::Full => n,
        }
    }

    fn horizon(self, t: f64) -> f64 {
        match self {
            Level::Fast => t.min(5.0),
            Level::Full => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Below,
    AtLeast,
    Holds,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub value: f64,
    pub bound: Option<f64>,
    pub relation: Relation,
    pub passed: bool,
}

impl Check {
    pub fn below(label: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { label: label.into(), value, bound: Some(bound), relation: Relation::Below, passed: value < bound }
    }

    pub fn at_least(label: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { label: label.into(), value, bound: Some(bound), relation: Relation::AtLeast, passed: value >= bound }
    }

    pub fn holds(label: impl Into<String>, ok: bool) -> Self {
        Self { label: label.into(), value: if ok { 1.0 } else { 0.0 }, bound: None, relation: Relation::Holds, passed: ok }
    }

    /// Reported value with no pass/fail meaning.
    pub fn info(label: impl Into<String>, value: f64) -> Self {
        Self { label: label.into(), value, bound: None, relation: Relation::Info, passed: true }
    }

    pub fn describe(&self) -> String {
        let mark = if self.passed { "ok" } else { "FAIL" };
        match (self.relation, self.bound) {
            (Relation::Below, Some(b)) => format!("{} = {:.3e} < {:.0e} [{mark}]", self.label, self.value, b),
            (Relation::AtLeast, Some(b)) => format!("{} = {:.3e} >= {} [{mark}]", self.label, self.value, b),
            (Relation::Info, _) => format!("{} = {:.3e}", self.label, self.value),
            _ => format!("{} [{mark}]", self.label),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    /// wall-clock budget in seconds for an optimized build
    pub budget_s: f64,
    /// measured wall-clock time; excluded from serialized output
    #[serde(skip)]
    pub elapsed_s: f64,
}

impl CriterionReport {
    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut parts: Vec<String> = self.checks.iter().map(Check::describe).collect();
        if let Some(e) = &self.error {
            parts.push(format!("error: {e}"));
        }
        format!("[{status}] {:>2} {} ({:.2} s): {}", self.id, self.title, self.elapsed_s, parts.join("; "))
    }
}

pub fn title(id: u32) -> &'static str {
    match id {
        1 => "operator algebra",
        2 => "commutator of derivations",
        3 => "wronskian construction",
        4 => "symmetries and conservation laws",
        5 => "hodograph",
        6 => "burgers pipeline",
        7 => "dispersion",
        8 => "residual checker",
        9 => "jost solver",
        10 => "triad",
        11 => "quartet",
        12 => "three-body",
        13 => "end-to-end",
        _ => "unknown",
    }
}

pub fn budget(id: u32) -> f64 {
    match id {
        1 | 2 | 5 | 7 => 1.0,
        3 => 2.0,
        4 | 9 | 11 => 5.0,
        6 => 10.0,
        8 | 10 => 30.0,
        12 => 60.0,
        _ => 120.0,
    }
}

fn rng_for(seed: u64, id: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(id as u64))
}

/// Runs criterion `id` (1..=12). Criterion 13 measures the whole suite and
/// is assembled by [`run_all`].
pub fn run_criterion(id: u32, level: Level, seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut rng = rng_for(seed, id);
    let out = match id {
        1 => operator_algebra(&mut rng),
        2 => derivation_commutators(&mut rng),
        3 => wronskian_construction(),
        4 => symmetry_suite(&mut rng),
        5 => hodograph(),
        6 => burgers(level, &mut rng),
        7 => dispersion(),
        8 => residuals(),
        9 => jost(),
        10 => triad(level, &mut rng),
        11 => quartet(),
        12 => three_body(level, &mut rng),
        13 => determinism(level, seed),
        _ => Err(config("verify", format!("no criterion {id}"))),
    };
    let (checks, error) = match out {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let passed = error.is_none() && !checks.is_empty() && checks.iter().all(|c| c.passed);
    CriterionReport {
        id,
        title: title(id).to_string(),
        passed,
        checks,
        error,
        budget_s: budget(id),
        elapsed_s: start.elapsed().as_secs_f64(),
    }
}

/// Runs criteria 1..=12 in parallel on the current rayon pool, then the
/// end-to-end criterion. Reports come back ordered by id.
pub fn run_all(level: Level, seed: u64) -> Vec<CriterionReport> {
    let start = Instant::now();
    let mut reports: Vec<CriterionReport> = (1..CRITERIA).into_par_iter().map(|id| run_criterion(id, level, seed)).collect();
    let mut last = run_criterion(CRITERIA, level, seed);
    let total = start.elapsed().as_secs_f64();
    let others = reports.iter().all(|r| r.passed);
    last.checks.push(Check::holds("criteria 1-12 pass", others));
    last.checks.push(Check::holds(format!("suite within {} s", budget(CRITERIA)), total < budget(CRITERIA)));
    last.passed = last.passed && others;
    last.elapsed_s = total;
    reports.push(last);
    reports
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn rand_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> UPoly {
    let d = rng.gen_range(0..=max_deg);
    UPoly::new((0..=d).map(|_| rand_rat(rng)).collect())
}

fn rand_op(rng: &mut ChaCha8Rng, max_order: usize, max_deg: usize) -> LinearDiffOp {
    let n = rng.gen_range(1..=max_order + 1);
    LinearDiffOp::from_polys((0..n).map(|_| rand_poly(rng, max_deg)).collect())
}

fn operator_algebra(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut bad = 0;
    for _ in 0..50 {
        let a = rand_poly(rng, 5);
        let op = compose(&LinearDiffOp::d(2), &LinearDiffOp::multiply_by(a.clone().into()));
        let da = a.derivative();
        let ok = op.coeffs().len() <= 3
            && op.coeff(0) == RationalFn::from(da.derivative())
            && op.coeff(1) == RationalFn::from(da.scale(&rat(2, 1)))
            && op.coeff(2) == RationalFn::from(a);
        bad += usize::from(!ok);
    }
    let mut nonassoc = 0;
    for _ in 0..30 {
        let (a, b, c) = (rand_op(rng, 3, 3), rand_op(rng, 3, 3), rand_op(rng, 3, 3));
        nonassoc += usize::from(compose(&compose(&a, &b), &c) != compose(&a, &compose(&b, &c)));
    }
    Ok(vec![
        Check::holds(format!("D²·a = (a'', 2a', a) on 50 random a ({bad} mismatches)"), bad == 0),
        Check::holds(format!("associativity on 30 random triples ({nonassoc} mismatches)"), nonassoc == 0),
    ])
}

fn derivation_commutators(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut bad = 0;
    for _ in 0..50 {
        let (a, b) = (rand_poly(rng, 5), rand_poly(rng, 5));
        let da = LinearDiffOp::new(vec![RationalFn::zero(), a.clone().into()]);
        let db = LinearDiffOp::new(vec![RationalFn::zero(), b.clone().into()]);
        let c = commutator(&da, &db);
        let expect = &(&a * &b.derivative()) - &(&a.derivative() * &b);
        let ok = c.coeffs().len() <= 2 && c.coeff(0).is_zero() && c.coeff(1) == RationalFn::from(expect);
        bad += usize::from(!ok);
    }
    Ok(vec![Check::holds(format!("[a∂, b∂] is a derivation on 50 random pairs ({bad} mismatches)"), bad == 0)])
}

fn wronskian_construction() -> Result<Vec<Check>> {
    let exact = exact_operator_from_polynomials(&[UPoly::from_ints(&[1]), UPoly::from_ints(&[0, 1])])?;
    let one_x = operator_from_kernel(&KernelSpec::new(
        vec![BasisFunction::from_catalog("1")?, BasisFunction::from_catalog("x")?],
        (0.0, 1.0),
        33,
    )?)?;
    let sampled_exact = one_x.coeffs.iter().all(|c| c[0] == 0.0 && c[1] == 0.0 && c[2] == 1.0);

    let x_x2 = operator_from_kernel(&KernelSpec::new(
        vec![BasisFunction::polynomial(vec![0.0, 1.0]), BasisFunction::polynomial(vec![0.0, 0.0, 1.0])],
        (1.0, 2.0),
        33,
    )?)?;
    let mut gap: f64 = 0.0;
    for (x, c) in x_x2.xs.iter().zip(&x_x2.coeffs) {
        gap = gap.max((c[1] + 2.0 / x).abs()).max((c[0] - 2.0 / (x * x)).abs()).max((c[2] - 1.0).abs());
    }

    let w = (0.5, 1.4);
    let (s, r) = (BasisFunction::sin(), BasisFunction::sqrt());
    let op = operator_from_kernel(&KernelSpec::new(vec![s.clone(), r.clone()], w, 33)?)?;
    let res = membership_test(&op, &s, w)?.max(membership_test(&op, &r, w)?);
    let reference = sin_sqrt_reference_comparison(64)?;
    Ok(vec![
        Check::holds("{1, x} gives ψ'' = 0 exactly", exact == LinearDiffOp::d(2) && sampled_exact),
        Check::below("{x, x²} max coefficient gap", gap, 1e-10),
        Check::below("{sin, √x} basis residual", res, 1e-8),
        Check::info("printed {sin, √x} equation residual on sin (documented discrepancy)", reference.reference_residual_sin),
        Check::info("printed {sin, √x} equation residual on √x (documented discrepancy)", reference.reference_residual_sqrt),
    ])
}

fn jp(s: &str) -> Result<JetPolynomial> {
    parse_polynomial(s)
}

fn candidate(comps: [&str; 3]) -> Result<SymmetryCandidate> {
    let coords = vec![JetCoord::X, JetCoord::Y(0), JetCoord::Y(1)];
    let comps = comps.iter().map(|s| jp(s)).collect::<Result<Vec<_>>>()?;
    Ok(SymmetryCandidate::new(JetVectorField::new(coords, comps)?, "tau"))
}

fn symmetry_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let sys = DynamicalSystem::canonical(2, jp("1")?)?;
    let cls = is_conservation_law(&sys, &jp("y1 - x")?)?.holds && is_conservation_law(&sys, &jp("y + 1/2*x^2 - x*y1")?)?.holds;
    let shift = is_symmetry(&sys, &candidate(["1", "0", "0"])?)?;
    let galilei = is_symmetry(&sys, &candidate(["0", "x", "1"])?)?;
    let vectors = shift.symmetry && !shift.trivial && galilei.symmetry && !galilei.trivial;

    let mut bad = 0;
    for _ in 0..20 {
        // y'' = c with first integrals I1 = y1 − cx and I2 = y + cx²/2 − x y1
        let c = rand_rat(rng);
        let sys = DynamicalSystem::canonical(2, JetPolynomial::constant(c.clone()))?;
        let cx = JetPolynomial::constant(c.clone());
        let x = JetPolynomial::var(JetCoord::X);
        let i1 = &jp("y1")? - &(&cx * &x);
        let i2 = &(&jp("y")? + &(&cx * &x.pow(2)).scale(&rat(1, 2))) - &(&x * &jp("y1")?);
        let terms = rng.gen_range(1..=3);
        let mut f = JetPolynomial::zero();
        for _ in 0..terms {
            let k = rand_rat(rng);
            f = &f + &(&i1.pow(rng.gen_range(0..=2)) * &i2.pow(rng.gen_range(0..=2))).scale(&k);
        }
        let a: Vec<Rat> = (0..4).map(|_| rand_rat(rng)).collect();
        let gens = [candidate(["1", "0", "0"])?, candidate(["0", "1", "0"])?, candidate(["0", "x", "1"])?];
        let mut comps: Vec<JetPolynomial> = sys.field().components().into_iter().map(|q| q.scale(&a[3])).collect();
        for (g, k) in gens.iter().zip(&a) {
            for (slot, q) in comps.iter_mut().zip(g.field.components()) {
                *slot = &*slot + &q.scale(k);
            }
        }
        let g = SymmetryCandidate::new(JetVectorField::new(vec![JetCoord::X, JetCoord::Y(0), JetCoord::Y(1)], comps)?, "tau");
        let ok = is_conservation_law(&sys, &f)?.holds
            && is_symmetry(&sys, &g)?.symmetry
            && is_symmetry(&sys, &scale_symmetry(&sys, &g, &f)?)?.symmetry;
        bad += usize::from(!ok);
    }

    let kf = jp("2*u0*u1")?;
    let mut pde_ok = true;
    for phi in ["1", "u0", "u0^2", "u0^3"] {
        let kg = &jp(phi)? * &jp("u1")?;
        pde_ok &= pde_symmetry_check(&kf, &kg, min_depth(&kf, &kg)?)?.symmetric;
    }
    let heat = jp("u2")?;
    let control = pde_symmetry_check(&kf, &heat, min_depth(&kf, &heat)?)?.symmetric;
    Ok(vec![
        Check::holds("both first integrals of y'' = 1 annihilated", cls),
        Check::holds("(1,0,0) and (0,x,1) are nontrivial symmetries", vectors),
        Check::holds(format!("F·g stays a symmetry on 20 random triples ({bad} failures)"), bad == 0),
        Check::holds("[2uu₁, φ(u)u₁] = 0 for φ ∈ {1, u, u², u³}", pde_ok),
        Check::holds("negative control u₂ is not a symmetry", !control),
    ])
}

fn hodograph() -> Result<Vec<Check>> {
    let prof = MonotoneProfile::named("linear", (-50.0, 50.0))?;
    let u = |x: f64, t: f64| hodograph_solve(&prof, x, t).map(|s| s.u).unwrap_or(f64::NAN);
    let st = Stencil::central(1, 8)?;
    let h = 1e-3;
    let (mut res, mut gap): (f64, f64) = (0.0, 0.0);
    for x in [-1.0, -0.2, 0.5, 1.0] {
        for t in [0.05, 0.2, 0.3, 0.4] {
            let ut = st.apply(|s| u(x, s), t, h);
            let ux = st.apply(|s| u(s, t), x, h);
            res = res.max((ut - 2.0 * u(x, t) * ux).abs());
            gap = gap.max((u(x, t) - x / (1.0 - 2.0 * t)).abs());
        }
    }
    let cubic = MonotoneProfile::named("cubic", (-5.0, 5.0))?;
    let shock = matches!(hodograph_solve(&cubic, 0.0, 10.0), Err(Error::ShockFormed { .. }));
    Ok(vec![
        Check::below("PDE residual of u = x/(1−2t)", res, 1e-10),
        Check::below("gap to x/(1−2t)", gap, 1e-10),
        Check::below("|t_break − ½| linear", (prof.breaking_time() - 0.5).abs(), 1e-6),
        Check::below("|t_break − ½| cubic", (cubic.breaking_time() - 0.5).abs(), 1e-6),
        Check::holds("shock reported past breaking", shock),
    ])
}

fn periodic(n: usize, f: impl Fn(f64) -> f64) -> Result<SampledField> {
    Ok(SampledField::from_fn(Grid1D::periodic_2pi(n)?, f))
}

fn burgers(level: Level, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let n = level.grid(256);
    let u0 = periodic(n, |x| 0.5 * x.sin())?;
    let rep = burgers_residual(&u0, 0.5, 1.0)?;
    let gap = burgers_solve(&u0, 0.5, 1.0)?.max_abs_diff(&burgers_direct(&u0, 0.5, 1.0, 1e-4)?);
    let mut semigroup: f64 = 0.0;
    for _ in 0..10 {
        let c: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (a, b) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        let v0 = periodic(64, |x| c[0] * x.sin() + c[1] * (2.0 * x).cos() + c[2] * (5.0 * x).sin() + c[3])?;
        let once = heat_solve(&v0, a + b)?;
        let twice = heat_solve(&heat_solve(&v0, a)?, b)?;
        semigroup = semigroup.max(once.max_abs_diff(&twice));
    }
    let mut checks = vec![
        Check::below(format!("pipeline vs direct, n = {n}"), gap, 1e-5),
        Check::below("mass drift", rep.mass_drift, 1e-10),
        Check::info("Burgers residual", rep.residual),
        Check::below("heat semigroup", semigroup, 1e-12),
    ];
    if level == Level::Full {
        let u0 = periodic(512, |x| 0.5 * x.sin())?;
        let gap = burgers_solve(&u0, 0.5, 1.0)?.max_abs_diff(&burgers_direct(&u0, 0.5, 1.0, 1e-4)?);
        checks.push(Check::below("pipeline vs direct, n = 512", gap, 1e-5));
    }
    Ok(checks)
}

fn dispersion() -> Result<Vec<Check>> {
    let ks: Vec<f64> = (0..=80).map(|i| -2.0 + 0.05 * i as f64).collect();
    let worst_pp = |rep: &crate::spectral::DispersionReport, exact: &dyn Fn(f64) -> f64| {
        let mut w: f64 = 0.0;
        for b in &rep.branches {
            for (k, pp) in rep.ks.iter().zip(&b.omega_pp) {
                if let Some(pp) = pp {
                    w = w.max((pp.re - exact(*k)).abs());
                }
            }
        }
        w
    };
    let kdv = dispersion_relation(&DispersionSpec::parse("ut - uxxx")?, &ks, 1e-6)?;
    let adv = dispersion_relation(&DispersionSpec::parse("ut - 1.7*ux")?, &ks, 1e-6)?;
    let wave = dispersion_relation(&DispersionSpec::parse("utt - uxx")?, &ks, 1e-6)?;
    Ok(vec![
        Check::holds("ω = k³ dispersive", kdv.dispersive),
        Check::below("ω = k³: |ω'' − 6k|", worst_pp(&kdv, &|k| 6.0 * k), 1e-6),
        Check::holds("ω = −ck non-dispersive", !adv.dispersive),
        Check::below("ω = −ck: |ω''|", worst_pp(&adv, &|_| 0.0), 1e-6),
        Check::holds("ω = ±k non-dispersive with two branches", !wave.dispersive && wave.branches.len() == 2),
        Check::below("ω = ±k: |ω''|", worst_pp(&wave, &|_| 0.0), 1e-6),
    ])
}

fn min_ratio(rep: &crate::spectral::ResidualReport) -> f64 {
    rep.rows.iter().filter_map(|r| r.ratio).fold(f64::INFINITY, f64::min)
}

fn residuals() -> Result<Vec<Check>> {
    let w = ResidualWindow { x: (-4.0, 4.0), t: (0.0, 0.5), nx: 21, nt: 5 };
    let kdv = pde_residual(&PdeSpec::kdv(), &kdv_soliton(1.0), &w, 4, 0.05, 3)?;
    let w = ResidualWindow { x: (-4.0, 4.0), t: (0.0, 1.0), nx: 21, nt: 5 };
    let u = nls_soliton(1.0);
    let sign = resolve_nls_sign(&u, &w, 4, 0.05)?;
    let nls = pde_residual(&PdeSpec::nls(sign.sign), &u, &w, 4, 0.1, 3)?;
    Ok(vec![
        Check::at_least("KdV soliton Richardson ratio", min_ratio(&kdv), 12.0),
        Check::info("KdV max residual", kdv.max_residual),
        Check::at_least("NLS soliton Richardson ratio", min_ratio(&nls), 12.0),
        Check::info("NLS sign", sign.sign),
    ])
}

fn jost() -> Result<Vec<Check>> {
    let zero = JostProblem::new(|_| 0.0, (-1.0, 1.0), 1.0).with_grid(1.0, 1e-2);
    let trivial = jost_solve(&zero, 1e-13, 30)?.phi.iter().all(|p| *p == Complex::new(1.0, 0.0));
    let prob = JostProblem::square_well(-0.1, (-1.0, 1.0), 1.0);
    let sol = jost_solve(&prob, 1e-12, 30)?;
    let probe = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0];
    let oracle = jost_ode_oracle(&prob, &probe, &[], 1e-13)?;
    let mut gap: f64 = 0.0;
    for (x, o) in probe.iter().zip(&oracle) {
        let p = sol.at(*x).ok_or_else(|| config("verify::jost", format!("x = {x} outside the grid")))?;
        gap = gap.max((p - o).norm());
    }
    let mut worst_ratio: f64 = 0.0;
    for w in sol.gaps.windows(2) {
        if w[0] > 1e-14 {
            worst_ratio = worst_ratio.max(w[1] / w[0]);
        }
    }
    Ok(vec![
        Check::holds("u ≡ 0 gives φ ≡ 1 exactly", trivial),
        Check::below("square well vs ODE shooting", gap, 1e-8),
        Check::below("worst Neumann gap ratio", worst_ratio, sol.contraction_bound.min(1.0)),
        Check::info("contraction bound", sol.contraction_bound),
    ])
}

fn rk4_triad(sys: &TriadSystem, a0: [f64; 3], t_end: f64, mut obs: impl FnMut(f64, [f64; 3])) -> Result<()> {
    let rhs = |_: f64, y: &[f64]| -> Result<Vec<f64>> { Ok(triad_rhs(sys, &[y[0], y[1], y[2]]).to_vec()) };
    integrate(&rhs, 0.0, &a0, t_end, &IntegratorConfig::rk4(1e-3), |t, y| {
        obs(t, [y[0], y[1], y[2]]);
        Ok(())
    })?;
    Ok(())
}

fn triad(level: Level, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let sys = TriadSystem::planetary([1.0, 2.0, 3.0])?;
    let (e0, z0) = invariants(&sys, &[1.0, 1.0, 1.0]);
    let t_end = level.horizon(20.0);
    let mut drift = (0.0f64, 0.0f64);
    rk4_triad(&sys, [1.0, 1.0, 1.0], t_end, |_, a| {
        let (e, z) = invariants(&sys, &a);
        drift = (drift.0.max((e - e0).abs()), drift.1.max((z - z0).abs()));
    })?;

    let mut worst: f64 = 0.0;
    let mut done = 0;
    let mut attempts = 0;
    while done < 20 && attempts < 1000 {
        attempts += 1;
        let odd = rng.gen_range(0..3);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let mut c = [0.0; 3];
        for (i, ci) in c.iter_mut().enumerate() {
            let mag = rng.gen_range(0.3..2.0);
            *ci = if i == odd { -sign * mag } else { sign * mag };
        }
        let a0 = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let g = TriadSystem::generic(c)?;
        let Ok(p) = closed_form(&g, &a0) else { continue };
        if p.m > 0.99 || p.period > 60.0 {
            continue;
        }
        rk4_triad(&g, a0, p.period, |t, a| {
            let e = p.eval(t);
            worst = worst.max((0..3).map(|i| (e[i] - a[i]).abs()).fold(0.0, f64::max));
        })?;
        done += 1;
    }

    let mut jac: f64 = 0.0;
    for _ in 0..1000 {
        let (u, m) = (rng.gen_range(-50.0..50.0), rng.gen_range(0.0..0.999));
        let (sn, cn, dn) = jacobi(u, m)?;
        jac = jac.max((sn * sn + cn * cn - 1.0).abs()).max((dn * dn + m * sn * sn - 1.0).abs());
    }
    Ok(vec![
        Check::holds("energy 6 and enstrophy 14", (e0, z0) == (6.0, 14.0)),
        Check::below(format!("RK4 energy drift over T = {t_end}"), drift.0, 1e-9),
        Check::below(format!("RK4 enstrophy drift over T = {t_end}"), drift.1, 1e-9),
        Check::holds(format!("20 random generic cases found ({done})"), done == 20),
        Check::below("closed form vs RK4 over one period", worst, 1e-6),
        Check::below("Jacobi identities", jac, 1e-12),
    ])
}

fn quartet() -> Result<Vec<Check>> {
    let sys = QuartetSystem::new([1.0, -0.5, 0.8, -1.2])?;
    let a0 = [0.9, 0.7, -0.6, 0.5];
    let i0 = quartet_invariants(&sys, &a0);
    let rhs = |_: f64, y: &[f64]| -> Result<Vec<f64>> { Ok(quartet_rhs(&sys, &[y[0], y[1], y[2], y[3]]).to_vec()) };
    let mut worst: f64 = 0.0;
    integrate(&rhs, 0.0, &a0, 5.0, &IntegratorConfig::rk4(1e-3), |_, y| {
        let i = quartet_invariants(&sys, &[y[0], y[1], y[2], y[3]]);
        worst = worst.max((0..3).map(|j| (i[j] - i0[j]).abs()).fold(0.0, f64::max));
        Ok(())
    })?;
    Ok(vec![Check::below("max invariant drift over T = 5", worst, 1e-9)])
}

fn random_three_body(rng: &mut ChaCha8Rng) -> tb::ThreeBodyState {
    type C = Complex<f64>;
    loop {
        let z = [0; 3].map(|_| C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        let v = [0; 3].map(|_| C::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)));
        let s = tb::ThreeBodyState::new(z, v).com_gauge();
        if s.distances().iter().all(|&d| d > 0.5) {
            return s;
        }
    }
}

fn three_body(level: Level, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    type C = Complex<f64>;
    let t_end = level.horizon(10.0);
    let cfg = tb::default_config();
    let repulsive = tb::ForceLaw::poincare(1.0);
    let newton = tb::ForceLaw::newton_like();
    let mut kick = tb::lagrange_orbit(&newton, 1.0)?.state;
    kick.v[0] += C::new(0.01, -0.01);
    let cases = [
        (random_three_body(rng), repulsive.clone()),
        (random_three_body(rng), tb::ForceLaw::power(-0.1, 0.0)),
        (kick.com_gauge(), newton.clone()),
    ];
    let mut drift = tb::DriftReport { energy: 0.0, angular_momentum: 0.0, com_velocity: 0.0 };
    for (init, law) in &cases {
        let d = tb::drifts(&tb::simulate(init, law, t_end, &cfg, 1)?, law);
        drift.energy = drift.energy.max(d.energy);
        drift.angular_momentum = drift.angular_momentum.max(d.angular_momentum);
        drift.com_velocity = drift.com_velocity.max(d.com_velocity);
    }

    let inverse_square = tb::ForceLaw::power(1.0, -2.0);
    let lj = (0..100).map(|_| tb::lagrange_jacobi_residual(&random_three_body(rng), &inverse_square)).fold(0.0, f64::max);

    let traj = tb::simulate(&random_three_body(rng), &repulsive, t_end, &cfg, 1)?;
    let convex = tb::convexity_audit(&traj, &repulsive)?;

    let orbit = tb::lagrange_orbit(&newton, 1.0)?;
    let spread = tb::equidistance_audit(&tb::simulate(&orbit.state, &newton, orbit.period, &cfg, 1)?, 1.0, 1e-6).max_spread;

    let pos = [C::new(1.0, 0.05), C::new(-0.5, 0.866), C::new(-0.5, -0.87)];
    let zero_e = tb::poincare_inertia_study(&tb::zero_energy_rotation(pos, -1.0)?, -1.0, 5.0, &cfg)?;
    let hot = tb::poincare_inertia_study(&tb::rigid_rotation(pos, 2.0), -1.0, 5.0, &cfg)?;
    let increasing = hot.series.windows(2).all(|w| w[1].1 >= w[0].1);
    let convex_growth = hot.energy > 0.0 && increasing && hot.quadratic_fit_gap < 1e-6 * hot.drift;

    let scat = tb::calogero_scattering(&[-1.0, 0.1, 1.3], &[0.8, -0.1, -0.5], 1000.0, &tb::calogero_default_config())?;
    Ok(vec![
        Check::below(format!("energy drift over T = {t_end}"), drift.energy, 1e-8),
        Check::below(format!("angular momentum drift over T = {t_end}"), drift.angular_momentum, 1e-8),
        Check::below("COM velocity", drift.com_velocity, 1e-12),
        Check::below("Lagrange-Jacobi residual at 100 states", lj, 1e-8),
        Check::holds("convexity expression positive on repulsive run", convex.min_displayed > 0.0),
        Check::info("min convexity expression", convex.min_displayed),
        Check::below("Lagrange orbit distance spread", spread, 1e-6),
        Check::below("zero-energy 𝒵 drift", zero_e.drift, 1e-6),
        Check::holds("positive-energy 𝒵 grows convexly (𝒵 = 𝒵₀ + 𝒵'₀t + 3Et²)", convex_growth),
        Check::below("Calogero velocity permutation gap", scat.max_gap, 1e-5),
    ])
}

/// Re-runs two randomized criteria with the same seed and compares the
/// serialized reports byte for byte.
fn determinism(level: Level, seed: u64) -> Result<Vec<Check>> {
    let render = || -> Result<String> {
        let reps: Vec<CriterionReport> = [1, 4].iter().map(|&id| run_criterion(id, level, seed)).collect();
        serde_json::to_string(&reps).map_err(|e| config("verify", e.to_string()))
    };
    let (a, b) = (render()?, render()?);
    Ok(vec![Check::holds("repeated run with the same seed is byte-identical", a == b)])
}
