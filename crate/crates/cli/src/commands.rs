use std::path::PathBuf;

use clap::{Args, ValueEnum};
use integrability_core::diffop::{commutator, compose, euler_substitute, parse_operator, LinearDiffOp};
use integrability_core::error::config;
use integrability_core::exprjet::{parse_polynomial, JetCoord, JetPolynomial, JetVectorField};
use integrability_core::io::CsvTable;
use integrability_core::numerics::{integrate, Grid1D, IntegratorConfig, SampledField};
use integrability_core::resonance::{
    closed_form, invariants, quartet_invariants, quartet_rhs, triad_rhs, QuartetSystem, TriadSystem,
};
use integrability_core::spectral::{
    burgers_direct, burgers_residual, burgers_solve, dispersion_relation, heat_solve_with, jost_ode_oracle, jost_solve,
    kdv_soliton, nls_soliton, pde_residual, resolve_nls_sign, DispersionSpec, JostConvention, JostProblem, PdeSpec,
    ResidualWindow,
};
use integrability_core::symmetry::{
    corollary_g0_check, is_conservation_law, is_symmetry, min_depth, pde_symmetry_check, DynamicalSystem,
    SymmetryCandidate,
};
use integrability_core::threebody::{
    calogero_run, calogero_scattering, drifts, lagrange_orbit, monitors, simulate, ForceLaw,
    ThreeBodyState,
};
use integrability_core::transforms::{
    cole_hopf, hodograph_solve, inverse_cole_hopf, thomas_general_solution, thomas_residual, Field2D, MonotoneProfile,
    ThomasParams,
};
use integrability_core::verify::{self, Level};
use integrability_core::wronskian::{membership_test, operator_from_kernel, wronskian_zeros, BasisFunction, KernelSpec};
use integrability_core::Result;
use num::Complex;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{Failure, Output};

fn pair(v: &[f64], what: &str) -> Result<(f64, f64)> {
    match v {
        [a, b] => Ok((*a, *b)),
        _ => Err(config("cli", format!("{what} needs exactly two values, got {}", v.len()))),
    }
}

fn triple(v: &[f64], what: &str) -> Result<[f64; 3]> {
    v.try_into().map_err(|_| config("cli", format!("{what} needs exactly three values, got {}", v.len())))
}

fn read_file(path: &PathBuf) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn field_csv(f: &SampledField) -> CsvTable {
    let mut t = CsvTable::new(["x", "value"]);
    for (x, v) in f.grid().points().zip(f.values()) {
        t.push(vec![x, v.re]);
    }
    t
}

/// Sum of Fourier terms `sin:amp:k`, `cos:amp:k` and `const:c`.
#[derive(Debug, Clone)]
struct Profile(Vec<(String, f64, f64)>);

impl Profile {
    fn parse(src: &str) -> Result<Self> {
        let bad = |s: &str| config("cli::profile", format!("bad term `{s}`; expected sin:amp:k, cos:amp:k or const:c"));
        let mut terms = Vec::new();
        for term in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = term.split(':').collect();
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(term));
            match parts[..] {
                [kind @ ("sin" | "cos"), a, k] => terms.push((kind.to_string(), num(a)?, num(k)?)),
                ["const", c] => terms.push(("const".to_string(), num(c)?, 0.0)),
                _ => return Err(bad(term)),
            }
        }
        if terms.is_empty() {
            return Err(config("cli::profile", "empty profile"));
        }
        Ok(Self(terms))
    }

    /// Value at `x` with each mode damped by `exp(−decay·k²)`.
    fn eval(&self, x: f64, decay: f64) -> f64 {
        self.0
            .iter()
            .map(|(kind, a, k)| {
                let damp = (-decay * k * k).exp();
                match kind.as_str() {
                    "sin" => a * damp * (k * x).sin(),
                    "cos" => a * damp * (k * x).cos(),
                    _ => *a,
                }
            })
            .sum()
    }

    fn sample(&self, n: usize) -> Result<SampledField> {
        Ok(SampledField::from_fn(Grid1D::periodic_2pi(n)?, |x| self.eval(x, 0.0)))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DiffopMode {
    /// print the parsed operator in canonical form
    Show,
    /// L∘M
    Compose,
    /// [L, M] = LM − ML
    Commutator,
    /// rewrite in terms of θ = x·d/dx (Euler operators only)
    Euler,
}

#[derive(Debug, Args)]
pub struct DiffopArgs {
    /// Left operator, e.g. "(x^2)*d2 + x*d1 + 1"
    #[arg(long, allow_negative_numbers = true)]
    pub left: String,
    /// Right operator for compose and commutator
    #[arg(long, allow_negative_numbers = true)]
    pub right: Option<String>,
    #[arg(long, allow_negative_numbers = true, value_enum, default_value_t = DiffopMode::Show)]
    pub mode: DiffopMode,
}

fn op_json(op: &LinearDiffOp) -> Value {
    json!({ "text": op.to_string(), "order": op.order(), "coefficients": op })
}

pub fn diffop(a: &DiffopArgs) -> std::result::Result<Output, Failure> {
    let l = parse_operator(&a.left)?;
    let right = || -> Result<LinearDiffOp> {
        let src = a.right.as_deref().ok_or_else(|| config("cli::diffop", "this mode needs --right"))?;
        parse_operator(src)
    };
    let result = match a.mode {
        DiffopMode::Show => l.clone(),
        DiffopMode::Compose => compose(&l, &right()?),
        DiffopMode::Commutator => commutator(&l, &right()?),
        DiffopMode::Euler => euler_substitute(&l)?,
    };
    let mode = format!("{:?}", a.mode).to_lowercase();
    Ok(Output::new("diffop", json!({ "mode": mode, "left": op_json(&l), "result": op_json(&result) })))
}

#[derive(Debug, Args)]
pub struct WronskianArgs {
    /// Basis functions separated by ';': sin, cos, sqrt, exp(c), pow(p),
    /// poly(c0,c1,...), 1, x
    #[arg(long, allow_negative_numbers = true)]
    pub basis: String,
    /// Sampling window a,b
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.5, 2.0])]
    pub window: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 64)]
    pub samples: usize,
    /// Extra catalog function to test for kernel membership
    #[arg(long, allow_negative_numbers = true)]
    pub test: Option<String>,
}

pub fn wronskian(a: &WronskianArgs) -> std::result::Result<Output, Failure> {
    let window = pair(&a.window, "--window")?;
    let basis: Vec<BasisFunction> =
        a.basis.split(';').map(BasisFunction::from_catalog).collect::<Result<_>>()?;
    let labels: Vec<String> = basis.iter().map(|b| b.label().to_string()).collect();
    let spec = KernelSpec::new(basis.clone(), window, a.samples)?;
    let op = operator_from_kernel(&spec)?;
    let zeros = wronskian_zeros(&spec)?;
    let mut members = Vec::new();
    for b in &basis {
        members.push(json!({ "function": b.label(), "residual": membership_test(&op, b, window)? }));
    }
    let test = match &a.test {
        Some(name) => {
            let psi = BasisFunction::from_catalog(name)?;
            Some(json!({ "function": psi.label(), "residual": membership_test(&op, &psi, window)? }))
        }
        None => None,
    };
    let report = json!({
        "basis": labels,
        "order": op.order(),
        "window": [window.0, window.1],
        "wronskian_zeros": zeros,
        "kernel_residuals": members,
        "test": test,
    });
    Ok(Output::new("wronskian", report).with_csv(op.to_csv()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    order: Option<u32>,
    rhs: Option<String>,
    coords: Option<Vec<String>>,
    components: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct SymmetryArgs {
    /// JSON file {"order", "rhs"} or {"coords", "components"} describing the system
    #[arg(long, allow_negative_numbers = true)]
    pub system: Option<PathBuf>,
    /// Order of the canonical ODE y^(n) = rhs
    #[arg(long, allow_negative_numbers = true)]
    pub order: Option<u32>,
    /// Right-hand side of the ODE in x, y, y1, ...
    #[arg(long, allow_negative_numbers = true)]
    pub rhs: Option<String>,
    /// Candidate conservation law
    #[arg(long, allow_negative_numbers = true)]
    pub cl: Option<String>,
    /// Candidate symmetry: one component per coordinate separated by ';',
    /// or a file holding that text
    #[arg(long, allow_negative_numbers = true)]
    pub candidate: Option<String>,
    /// Evolutionary flow K[u] in x, u0, u1, ... for the PDE check
    #[arg(long, allow_negative_numbers = true)]
    pub flow: Option<String>,
    /// Generator G[u] of the second flow
    #[arg(long, allow_negative_numbers = true)]
    pub generator: Option<String>,
    /// Jet depth for the PDE check (defaults to the minimum sufficient depth)
    #[arg(long, allow_negative_numbers = true)]
    pub depth: Option<usize>,
}

fn load_system(a: &SymmetryArgs) -> std::result::Result<DynamicalSystem, Failure> {
    let file = match &a.system {
        Some(p) => serde_json::from_str::<SystemFile>(&read_file(p)?)
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => SystemFile { order: a.order, rhs: a.rhs.clone(), coords: None, components: None },
    };
    match file {
        SystemFile { order: Some(n), rhs: Some(rhs), coords: None, components: None } => {
            Ok(DynamicalSystem::canonical(n, parse_polynomial(&rhs)?)?)
        }
        SystemFile { order: None, rhs: None, coords: Some(cs), components: Some(ps) } => {
            let coords = cs
                .iter()
                .map(|c| c.parse::<JetCoord>().map_err(Failure::Usage))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let comps = ps.iter().map(|p| parse_polynomial(p)).collect::<Result<Vec<_>>>()?;
            Ok(DynamicalSystem::from_components(coords, comps)?)
        }
        _ => Err(Failure::Usage("a system needs either order and rhs, or coords and components".into())),
    }
}

pub fn symmetry(a: &SymmetryArgs) -> std::result::Result<Output, Failure> {
    if let Some(flow) = &a.flow {
        let k_f = parse_polynomial(flow)?;
        let src = a.generator.as_deref().ok_or_else(|| Failure::Usage("--flow needs --generator".into()))?;
        let k_g = parse_polynomial(src)?;
        let depth = match a.depth {
            Some(d) => d,
            None => min_depth(&k_f, &k_g)?,
        };
        let v = pde_symmetry_check(&k_f, &k_g, depth)?;
        let report = json!({
            "flow": k_f.to_string(),
            "generator": k_g.to_string(),
            "depth": depth,
            "symmetry": v.symmetric,
            "bracket": v.bracket.to_string(),
        });
        return Ok(Output::new("symmetry", report));
    }
    let sys = load_system(a)?;
    let mut report = json!({ "system": sys.field().to_string() });
    if let Some(cl) = &a.cl {
        let v = is_conservation_law(&sys, &parse_polynomial(cl)?)?;
        report["conservation_law"] = json!({ "holds": v.holds, "residual": v.residual.to_string() });
    }
    if let Some(cand) = &a.candidate {
        let text = match std::fs::read_to_string(cand) {
            Ok(t) => t,
            Err(_) => cand.clone(),
        };
        let comps = text.trim().split(';').map(parse_polynomial).collect::<Result<Vec<JetPolynomial>>>()?;
        let field = JetVectorField::new(sys.coords().to_vec(), comps)?;
        let cand = SymmetryCandidate::new(field, "τ");
        let v = is_symmetry(&sys, &cand)?;
        report["symmetry"] = serde_json::to_value(v.report()).expect("serializes");
        if sys.is_canonical() {
            let g0 = corollary_g0_check(&sys, &cand)?;
            report["x_component"] = json!({
                "g0": g0.g0.to_string(),
                "applies": g0.applies,
                "conservation_law": g0.conservation_law,
                "normalized": g0.normalized.map(|f| f.to_string()),
            });
        }
    }
    if a.cl.is_none() && a.candidate.is_none() {
        return Err(Failure::Usage("nothing to check: give --cl and/or --candidate, or --flow with --generator".into()));
    }
    Ok(Output::new("symmetry", report))
}

#[derive(Debug, Args)]
pub struct ShockArgs {
    /// Initial profile φ: linear, cubic or sinh
    #[arg(long, allow_negative_numbers = true, default_value = "cubic")]
    pub profile: String,
    /// Range of u on which φ is defined
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-5.0, 5.0])]
    pub domain: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
}

pub fn shock(a: &ShockArgs) -> std::result::Result<Output, Failure> {
    let profile = MonotoneProfile::named(&a.profile, pair(&a.domain, "--domain")?)?;
    let sol = hodograph_solve(&profile, a.x, a.t)?;
    let report = json!({
        "profile": a.profile,
        "x": a.x,
        "t": a.t,
        "u": sol.u,
        "residual": sol.residual,
        "breaking_time": sol.breaking_time,
    });
    Ok(Output::new("shock", report))
}

#[derive(Debug, Args)]
pub struct ThomasArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    pub k1: f64,
    /// Points per side of the grid on [0, 2π] × [0, 1]
    #[arg(long, allow_negative_numbers = true, default_value_t = 64)]
    pub grid: usize,
    /// Constant value of f̂(y)
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    pub fhat: f64,
    /// Amplitude A of h(x) = A·cos x
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    pub amp: f64,
}

pub fn thomas(a: &ThomasArgs) -> std::result::Result<Output, Failure> {
    let params = ThomasParams::new(a.alpha, 0.0, a.k1);
    let (fhat, amp) = (a.fhat, a.amp);
    let sol = thomas_general_solution(params, move |_| fhat, move |x: f64| amp * x.cos())?;
    let xr = (0.0, 2.0 * std::f64::consts::PI);
    let psi = Field2D::from_fn((a.grid, a.grid), xr, (0.0, 1.0), |x, y| sol.psi(x, y))?;
    if psi.values.iter().any(|v| !v.is_finite()) {
        return Err(Failure::Core(config("cli::thomas", "θ is not positive on the grid; lower --amp or raise --fhat")));
    }
    let residual = thomas_residual(&psi, a.alpha, 0.0, 4)?;
    let mut csv = CsvTable::new(["x", "y", "value"]);
    for i in 0..psi.nx {
        for j in 0..psi.ny {
            csv.push(vec![psi.x(i), psi.y(j), psi.at(i, j)]);
        }
    }
    let report = json!({ "params": sol.params, "grid": a.grid, "residual": residual });
    Ok(Output::new("thomas", report).with_csv(csv))
}

#[derive(Debug, Args)]
pub struct ColehopfArgs {
    /// CSV field with header x,value on a uniform periodic grid; taken as w > 0
    #[arg(long = "in", allow_negative_numbers = true)]
    pub input: Option<PathBuf>,
    /// Zero-mean profile for u on [0, 2π), e.g. "sin:0.5:1"
    #[arg(long, allow_negative_numbers = true)]
    pub init: Option<String>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 128)]
    pub n: usize,
}

fn read_field(path: &PathBuf) -> std::result::Result<SampledField, Failure> {
    let t = CsvTable::parse(&read_file(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let (xs, vs) = match (t.column("x"), t.column("value")) {
        (Some(x), Some(v)) => (x, v),
        _ => return Err(Failure::Usage(format!("{}: expected columns x,value", path.display()))),
    };
    if xs.len() < 2 {
        return Err(Failure::Usage(format!("{}: need at least two rows", path.display())));
    }
    let h = xs[1] - xs[0];
    let n = xs.len();
    let uniform = xs.iter().enumerate().all(|(j, x)| (x - (xs[0] + j as f64 * h)).abs() <= 1e-9 * (1.0 + x.abs()));
    if !uniform {
        return Err(Failure::Usage(format!("{}: x must be uniformly spaced", path.display())));
    }
    Ok(SampledField::from_real(Grid1D::new(n, xs[0], xs[0] + n as f64 * h)?, &vs)?)
}

pub fn colehopf(a: &ColehopfArgs) -> std::result::Result<Output, Failure> {
    let (direction, input, output, back) = match (&a.input, &a.init) {
        (Some(path), None) => {
            let w = read_field(path)?;
            let u = cole_hopf(&w)?;
            let w0 = w.values()[0];
            let back = inverse_cole_hopf(&u)?.max_abs_diff(&w.map(|z| z / w0));
            ("w to u", w, u, back)
        }
        (None, Some(src)) => {
            let u = Profile::parse(src)?.sample(a.n)?;
            let w = inverse_cole_hopf(&u)?;
            let back = cole_hopf(&w)?.max_abs_diff(&u);
            ("u to w", u, w, back)
        }
        _ => return Err(Failure::Usage("give exactly one of --in and --init".into())),
    };
    let report = json!({ "direction": direction, "n": input.grid().n(), "round_trip_error": back });
    Ok(Output::new("colehopf", report).with_csv(field_csv(&output)))
}

#[derive(Debug, Args)]
pub struct HeatArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = 128)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub nu: f64,
    /// Initial profile, e.g. "sin:1:1,cos:0.5:3,const:0.2"
    #[arg(long, allow_negative_numbers = true, default_value = "sin:1:1")]
    pub init: String,
}

pub fn heat(a: &HeatArgs) -> std::result::Result<Output, Failure> {
    let p = Profile::parse(&a.init)?;
    let u0 = p.sample(a.n)?;
    let u = heat_solve_with(&u0, a.t, a.nu)?;
    let exact = SampledField::from_fn(*u.grid(), |x| p.eval(x, a.nu * a.t));
    let residual = u.max_abs_diff(&exact);
    let drift = (u.integral() - u0.integral()).norm();
    let report = json!({
        "n": a.n,
        "t": a.t,
        "nu": a.nu,
        "residual": residual,
        "drift": drift,
        "verdict": residual < 1e-10 && drift < 1e-10,
    });
    Ok(Output::new("heat", report).with_csv(field_csv(&u)))
}

#[derive(Debug, Args)]
pub struct BurgersArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = 128)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    pub t: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub eps: f64,
    /// Zero-mean initial profile
    #[arg(long, allow_negative_numbers = true, default_value = "sin:0.5:1")]
    pub init: String,
    /// Time step of the direct integration used as a cross-check
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-4)]
    pub dt: f64,
}

pub fn burgers(a: &BurgersArgs) -> std::result::Result<Output, Failure> {
    let u0 = Profile::parse(&a.init)?.sample(a.n)?;
    let u = burgers_solve(&u0, a.t, a.eps)?;
    let rep = burgers_residual(&u0, a.t, a.eps)?;
    let gap = u.max_abs_diff(&burgers_direct(&u0, a.t, a.eps, a.dt)?);
    let report = json!({
        "n": a.n,
        "t": a.t,
        "eps": a.eps,
        "residual": rep.residual,
        "drift": rep.mass_drift,
        "direct_gap": gap,
        "verdict": gap < 1e-5 && rep.mass_drift < 1e-10,
    });
    Ok(Output::new("burgers", report).with_csv(field_csv(&u)))
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    /// Linear PDE as a sum of derivative monomials, e.g. "ut - uxxx"
    #[arg(long, allow_negative_numbers = true)]
    pub poly: String,
    /// Wavenumbers (default: 81 points on [-2, 2])
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub k: Option<Vec<f64>>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-6)]
    pub tol: f64,
}

pub fn dispersion(a: &DispersionArgs) -> std::result::Result<Output, Failure> {
    let spec = DispersionSpec::parse(&a.poly)?;
    let ks = a.k.clone().unwrap_or_else(|| (0..=80).map(|i| -2.0 + 0.05 * i as f64).collect());
    let rep = dispersion_relation(&spec, &ks, a.tol)?;
    let mut header = vec!["k".to_string()];
    for i in 0..rep.branches.len() {
        header.push(format!("re_omega{}", i + 1));
        header.push(format!("im_omega{}", i + 1));
    }
    let mut csv = CsvTable::new(header);
    for (j, k) in rep.ks.iter().enumerate() {
        let mut row = vec![*k];
        for b in &rep.branches {
            row.push(b.omega[j].re);
            row.push(b.omega[j].im);
        }
        csv.push(row);
    }
    let report = json!({
        "poly": a.poly,
        "dispersive": rep.dispersive,
        "dissipative": rep.dissipative,
        "branches": rep.branches.len(),
        "max_abs_re_omega_pp": rep.branches.iter().map(|b| b.max_abs_re_omega_pp).collect::<Vec<_>>(),
        "warnings": rep.warnings,
    });
    Ok(Output::new("dispersion", report).with_csv(csv))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Equation {
    /// u_t = 6uu_x − u_xxx against the one-soliton
    Kdv,
    /// NLS bright soliton; the sign of the nonlinearity is resolved from the data
    Nls,
    /// u_t = u_xx against e^{−t} sin x
    Heat,
    /// u_t = 2uu_x + u_xx against the Cole–Hopf image of 2 + e^{−t} cos x
    Burgers,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    #[arg(long, allow_negative_numbers = true, value_enum)]
    pub equation: Equation,
    /// Soliton parameter (κ for KdV, η for NLS)
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub param: f64,
    /// Initial finite-difference step
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.05)]
    pub h: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 3)]
    pub levels: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 4)]
    pub accuracy: usize,
}

pub fn residual(a: &ResidualArgs) -> std::result::Result<Output, Failure> {
    let w = ResidualWindow { x: (-4.0, 4.0), t: (0.0, 0.5), nx: 21, nt: 5 };
    let c = |v: f64| Complex::new(v, 0.0);
    let (rep, extra) = match a.equation {
        Equation::Kdv => (pde_residual(&PdeSpec::kdv(), &kdv_soliton(a.param), &w, a.accuracy, a.h, a.levels)?, json!({})),
        Equation::Nls => {
            let u = nls_soliton(a.param);
            let sign = resolve_nls_sign(&u, &w, a.accuracy, a.h)?;
            let rep = pde_residual(&PdeSpec::nls(sign.sign), &u, &w, a.accuracy, a.h, a.levels)?;
            (rep, serde_json::to_value(&sign).expect("serializes"))
        }
        Equation::Heat => {
            let u = move |x: f64, t: f64| c((-t).exp() * x.sin());
            (pde_residual(&PdeSpec::heat(1.0), &u, &w, a.accuracy, a.h, a.levels)?, json!({}))
        }
        Equation::Burgers => {
            let u = move |x: f64, t: f64| {
                let e = (-t).exp();
                c(-e * x.sin() / (2.0 + e * x.cos()))
            };
            (pde_residual(&PdeSpec::burgers(1.0), &u, &w, a.accuracy, a.h, a.levels)?, json!({}))
        }
    };
    let mut csv = CsvTable::new(["h", "residual"]);
    for r in &rep.rows {
        csv.push(vec![r.h, r.residual]);
    }
    let mut report = serde_json::to_value(&rep).expect("serializes");
    report["sign"] = extra;
    Ok(Output::new("residual", report).with_csv(csv))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Convention {
    /// kernel with real exponent 2k(x − x')
    Printed,
    /// kernel with exponent 2ik(x − x')
    Oscillatory,
}

#[derive(Debug, Args)]
pub struct JostArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub k: f64,
    /// Depth of the well u = amp on [a, b]
    #[arg(long, allow_negative_numbers = true, default_value_t = -0.1)]
    pub amp: f64,
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1.0, 1.0])]
    pub support: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, value_enum, default_value_t = Convention::Printed)]
    pub convention: Convention,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 30)]
    pub max_sweeps: usize,
}

pub fn jost(a: &JostArgs) -> std::result::Result<Output, Failure> {
    let conv = match a.convention {
        Convention::Printed => JostConvention::Printed,
        Convention::Oscillatory => JostConvention::Oscillatory,
    };
    let prob = JostProblem::square_well(a.amp, pair(&a.support, "--support")?, a.k).with_convention(conv);
    let sol = jost_solve(&prob, a.tol, a.max_sweeps)?;
    let (lo, hi) = (sol.xs[0], sol.xs[sol.xs.len() - 1]);
    let probe: Vec<f64> = sol.xs.iter().copied().step_by((sol.xs.len() / 8).max(1)).collect();
    let oracle = jost_ode_oracle(&prob, &probe, &[], 1e-13)?;
    let gap = probe
        .iter()
        .zip(&oracle)
        .filter_map(|(x, o)| sol.at(*x).map(|p| (p - o).norm()))
        .fold(0.0, f64::max);
    let report = json!({
        "k": a.k,
        "amp": a.amp,
        "grid": [lo, hi],
        "sweeps": sol.gaps.len(),
        "gaps": sol.gaps,
        "contraction_bound": sol.contraction_bound,
        "residual": gap,
        "verdict": gap < 1e-8,
    });
    Ok(Output::new("jost", report).with_csv(sol.to_csv()))
}

#[derive(Debug, Args)]
pub struct TriadArgs {
    /// Planetary wavenumbers n1,n2,n3
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "c")]
    pub n: Option<Vec<f64>>,
    /// Generic couplings c1,c2,c3
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Option<Vec<f64>>,
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1.0, 1.0, 1.0])]
    pub a0: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 20.0)]
    pub t: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-3)]
    pub dt: f64,
    /// Also evaluate the Jacobi elliptic closed form along the run
    #[arg(long)]
    pub closed_form: bool,
    /// Write every k-th step to the CSV
    #[arg(long, allow_negative_numbers = true, default_value_t = 10)]
    pub every: usize,
}

pub fn triad(a: &TriadArgs) -> std::result::Result<Output, Failure> {
    let sys = match (&a.n, &a.c) {
        (Some(n), None) => TriadSystem::planetary(triple(n, "--n")?)?,
        (None, Some(c)) => TriadSystem::generic(triple(c, "--c")?)?,
        (None, None) => TriadSystem::planetary([1.0, 2.0, 3.0])?,
        _ => unreachable!("clap rejects --n with --c"),
    };
    let a0 = triple(&a.a0, "--a0")?;
    let params = if a.closed_form { Some(closed_form(&sys, &a0)?) } else { None };
    let (e0, z0) = invariants(&sys, &a0);
    let mut header = vec!["t", "a1", "a2", "a3", "energy", "enstrophy"];
    if params.is_some() {
        header.extend(["cf1", "cf2", "cf3"]);
    }
    let mut csv = CsvTable::new(header);
    let (mut de, mut dz, mut gap) = (0.0f64, 0.0f64, 0.0f64);
    let mut step = 0usize;
    let every = a.every.max(1);
    let rhs = |_: f64, y: &[f64]| -> Result<Vec<f64>> { Ok(triad_rhs(&sys, &[y[0], y[1], y[2]]).to_vec()) };
    integrate(&rhs, 0.0, &a0, a.t, &IntegratorConfig::rk4(a.dt), |t, y| {
        let s = [y[0], y[1], y[2]];
        let (e, z) = invariants(&sys, &s);
        de = de.max((e - e0).abs());
        dz = dz.max((z - z0).abs());
        let cf = params.map(|p| p.eval(t));
        if let Some(cf) = cf {
            gap = gap.max((0..3).map(|i| (cf[i] - s[i]).abs()).fold(0.0, f64::max));
        }
        if step % every == 0 || t == a.t {
            let mut row = vec![t, s[0], s[1], s[2], e, z];
            row.extend(cf.into_iter().flatten());
            csv.push(row);
        }
        step += 1;
        Ok(())
    })?;
    let report = json!({
        "system": sys,
        "couplings": sys.couplings(),
        "a0": a0,
        "t": a.t,
        "dt": a.dt,
        "energy_drift": de,
        "enstrophy_drift": dz,
        "elliptic": params,
        "closed_form_gap": params.map(|_| gap),
    });
    Ok(Output::new("triad", report).with_csv(csv))
}

#[derive(Debug, Args)]
pub struct QuartetArgs {
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1.0, -1.0, 0.5, -0.5])]
    pub c: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1.0, 0.8, 0.6, 0.4])]
    pub a0: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 10.0)]
    pub t: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 10)]
    pub every: usize,
}

pub fn quartet(a: &QuartetArgs) -> std::result::Result<Output, Failure> {
    let c: [f64; 4] = a.c.as_slice().try_into().map_err(|_| config("cli", "--c needs exactly four values"))?;
    let a0: [f64; 4] = a.a0.as_slice().try_into().map_err(|_| config("cli", "--a0 needs exactly four values"))?;
    let sys = QuartetSystem::new(c)?;
    let i0 = quartet_invariants(&sys, &a0);
    let mut drift = [0.0f64; 3];
    let mut csv = CsvTable::new(["t", "a1", "a2", "a3", "a4", "i1", "i2", "i3"]);
    let mut step = 0usize;
    let every = a.every.max(1);
    let rhs = |_: f64, y: &[f64]| -> Result<Vec<f64>> { Ok(quartet_rhs(&sys, &[y[0], y[1], y[2], y[3]]).to_vec()) };
    integrate(&rhs, 0.0, &a0, a.t, &IntegratorConfig::rk4(a.dt), |t, y| {
        let inv = quartet_invariants(&sys, &[y[0], y[1], y[2], y[3]]);
        for i in 0..3 {
            drift[i] = drift[i].max((inv[i] - i0[i]).abs());
        }
        if step % every == 0 || t == a.t {
            csv.push(vec![t, y[0], y[1], y[2], y[3], inv[0], inv[1], inv[2]]);
        }
        step += 1;
        Ok(())
    })?;
    let report = json!({ "c": c, "a0": a0, "t": a.t, "dt": a.dt, "invariants": i0, "invariant_drift": drift });
    Ok(Output::new("quartet", report).with_csv(csv))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LawName {
    /// f = σ/s²
    Poincare,
    /// f = c·s^p
    Power,
    /// f = −s^{−3/2}, inverse-square attraction
    Newton,
}

#[derive(Debug, Args)]
pub struct ThreebodyArgs {
    #[arg(long, allow_negative_numbers = true, value_enum, default_value_t = LawName::Poincare)]
    pub law: LawName,
    #[arg(long, allow_negative_numbers = true, default_value_t = -1.0)]
    pub sigma: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = -1.0)]
    pub c: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub p: f64,
    /// JSON file {"z": [[x, y] x3], "v": [[x, y] x3]}
    #[arg(long, allow_negative_numbers = true, conflicts_with = "lagrange")]
    pub init: Option<PathBuf>,
    /// Start on the rotating equilateral orbit with this side length
    #[arg(long, allow_negative_numbers = true)]
    pub lagrange: Option<f64>,
    /// Final time
    #[arg(long = "T", allow_negative_numbers = true, default_value_t = 10.0)]
    pub t_end: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Add energy, angular momentum and 𝒵 columns and drift figures
    #[arg(long)]
    pub monitors: bool,
    /// Write every k-th accepted step to the CSV
    #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
    pub every: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InitFile {
    z: [[f64; 2]; 3],
    v: [[f64; 2]; 3],
}

pub fn threebody(a: &ThreebodyArgs) -> std::result::Result<Output, Failure> {
    let law = match a.law {
        LawName::Poincare => ForceLaw::poincare(a.sigma),
        LawName::Power => ForceLaw::power(a.c, a.p),
        LawName::Newton => ForceLaw::newton_like(),
    };
    let init = match (&a.init, a.lagrange) {
        (Some(p), None) => {
            let f: InitFile =
                serde_json::from_str(&read_file(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            let c = |p: [f64; 2]| Complex::new(p[0], p[1]);
            ThreeBodyState::new(f.z.map(c), f.v.map(c))
        }
        (None, Some(side)) => lagrange_orbit(&law, side)?.state,
        _ => return Err(Failure::Usage("give one of --init FILE or --lagrange SIDE".into())),
    };
    let traj = simulate(&init, &law, a.t_end, &IntegratorConfig::rkf45(a.tol), a.every)?;
    let mut header = vec!["t", "x1", "y1", "x2", "y2", "x3", "y3"];
    if a.monitors {
        header.extend(["energy", "angmom", "Z"]);
    }
    let mut csv = CsvTable::new(header);
    for s in &traj {
        let mut row = vec![s.t];
        row.extend(s.z.iter().flat_map(|z| [z.re, z.im]));
        if a.monitors {
            let m = monitors(s, &law);
            row.extend([m.energy, m.angular_momentum, m.inertia_momentum]);
        }
        csv.push(row);
    }
    let last = traj.last().expect("trajectory holds the final state");
    let mut report = json!({
        "law": law.label,
        "t": last.t,
        "final": serde_json::to_value(monitors(last, &law)).expect("serializes"),
    });
    if a.monitors {
        report["drift"] = serde_json::to_value(drifts(&traj, &law)).expect("serializes");
    }
    Ok(Output::new("threebody", report).with_csv(csv))
}

#[derive(Debug, Args)]
pub struct CalogeroArgs {
    /// Ordered initial positions
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1.0, 0.1, 1.3])]
    pub x0: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.8, -0.1, -0.5])]
    pub v0: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 10.0)]
    pub t: f64,
    /// Run from −T to +T and compare the sorted asymptotic velocities
    #[arg(long)]
    pub scattering: bool,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
    pub every: usize,
}

pub fn calogero(a: &CalogeroArgs) -> std::result::Result<Output, Failure> {
    let cfg = IntegratorConfig::rkf45(a.tol);
    if a.scattering {
        let rep = calogero_scattering(&a.x0, &a.v0, a.t, &cfg)?;
        let mut csv = CsvTable::new(["incoming", "outgoing"]);
        for (i, o) in rep.incoming.iter().zip(&rep.outgoing) {
            csv.push(vec![*i, *o]);
        }
        return Ok(Output::new("calogero", serde_json::to_value(&rep).expect("serializes")).with_csv(csv));
    }
    let run = calogero_run(&a.x0, &a.v0, a.t, &cfg, a.every)?;
    let n = run.x.len();
    let mut header = vec!["t".to_string()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    header.extend((1..=n).map(|i| format!("v{i}")));
    let mut csv = CsvTable::new(header);
    for (t, x, v) in &run.samples {
        let mut row = vec![*t];
        row.extend(x);
        row.extend(v);
        csv.push(row);
    }
    let report = json!({
        "t": run.t,
        "x": run.x,
        "v": run.v,
        "energy_drift": run.energy_drift,
        "momentum_drift": run.momentum_drift,
    });
    Ok(Output::new("calogero", report).with_csv(csv))
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// fast caps grids at n = 128 and horizons at T = 5
    #[arg(default_value = "fast")]
    pub level: String,
}

pub fn verify_all(a: &VerifyArgs, seed: u64) -> std::result::Result<Output, Failure> {
    let level = Level::parse(&a.level)?;
    let reports = verify::run_all(level, seed);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.summary_line());
        text.push('\n');
    }
    let failed: Vec<u32> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let verdict = if failed.is_empty() { "all criteria pass".to_string() } else { format!("failed: {failed:?}") };
    text.push_str(&verdict);
    text.push('\n');
    let report = json!({ "level": level, "seed": seed, "failed": failed, "criteria": reports });
    let mut out = Output::new("verify-all", report);
    out.success = failed.is_empty();
    out.text = Some(text);
    Ok(out)
}
