//! Finite-difference residuals of closed-form candidates for evolution
//! equations `a·u_t = Σ c·Π(factors)`.

use num::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};
use crate::numerics::Stencil;

type C = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Factor {
    /// `∂_x^m u`
    D(u32),
    /// `conj(∂_x^m u)`
    ConjD(u32),
    /// the coordinate `x`
    X,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdeTerm {
    pub coeff: C,
    pub factors: Vec<Factor>,
}

impl PdeTerm {
    pub fn new(coeff: impl Into<C>, factors: Vec<Factor>) -> Self {
        Self { coeff: coeff.into(), factors }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdeSpec {
    pub name: String,
    /// coefficient of `u_t`
    pub lhs: C,
    pub terms: Vec<PdeTerm>,
    /// highest `x`-derivative the right-hand side may use
    pub max_order: u32,
}

impl PdeSpec {
    pub fn new(name: impl Into<String>, lhs: impl Into<C>, terms: Vec<PdeTerm>, max_order: u32) -> Result<Self> {
        let s = Self { name: name.into(), lhs: lhs.into(), terms, max_order };
        let used = s.used_order();
        if used > max_order {
            return Err(config("spectral::pde_spec", format!("right-hand side uses ∂_x^{used} but declares order {max_order}")));
        }
        if s.lhs == C::new(0.0, 0.0) {
            return Err(config("spectral::pde_spec", "coefficient of u_t is zero"));
        }
        Ok(s)
    }

    fn used_order(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|t| &t.factors)
            .map(|f| match f {
                Factor::D(m) | Factor::ConjD(m) => *m,
                Factor::X => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// `u_t = 6uu_x + u_xxx`
    pub fn kdv() -> Self {
        use Factor::D;
        Self::new("kdv", 1.0, vec![PdeTerm::new(6.0, vec![D(0), D(1)]), PdeTerm::new(1.0, vec![D(3)])], 3)
            .expect("valid preset")
    }

    /// `iu_t = u_xx + sign·|u|²u`
    pub fn nls(sign: f64) -> Self {
        use Factor::{ConjD, D};
        let terms = vec![PdeTerm::new(1.0, vec![D(2)]), PdeTerm::new(sign, vec![D(0), D(0), ConjD(0)])];
        Self::new(if sign > 0.0 { "nls+" } else { "nls-" }, C::new(0.0, 1.0), terms, 2).expect("valid preset")
    }

    /// `u_t = νu_xx`
    pub fn heat(nu: f64) -> Self {
        Self::new("heat", 1.0, vec![PdeTerm::new(nu, vec![Factor::D(2)])], 2).expect("valid preset")
    }

    /// `u_t = 2uu_x + εu_xx`
    pub fn burgers(eps: f64) -> Self {
        use Factor::D;
        Self::new("burgers", 1.0, vec![PdeTerm::new(2.0, vec![D(0), D(1)]), PdeTerm::new(eps, vec![D(2)])], 2)
            .expect("valid preset")
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "kdv" => Ok(Self::kdv()),
            "nls+" | "nls-focusing" => Ok(Self::nls(1.0)),
            "nls-" | "nls-defocusing" => Ok(Self::nls(-1.0)),
            "heat" => Ok(Self::heat(1.0)),
            "burgers" => Ok(Self::burgers(1.0)),
            other => Err(config("spectral::pde_spec", format!("unknown equation `{other}`"))),
        }
    }
}

/// Rectangle of `nx × nt` evaluation points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualWindow {
    pub x: (f64, f64),
    pub t: (f64, f64),
    pub nx: usize,
    pub nt: usize,
}

impl ResidualWindow {
    fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let at = |r: (f64, f64), n: usize, i: usize| if n == 1 { r.0 } else { r.0 + (r.1 - r.0) * i as f64 / (n - 1) as f64 };
        (0..self.nt).flat_map(move |j| (0..self.nx).map(move |i| (at(self.x, self.nx, i), at(self.t, self.nt, j))))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualRow {
    pub h: f64,
    pub residual: f64,
    /// residual at the previous (coarser) step over this one
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub equation: String,
    pub accuracy: usize,
    pub rows: Vec<ResidualRow>,
    /// residual at the finest step
    pub max_residual: f64,
    /// `log2` of the last ratio
    pub observed_order: Option<f64>,
}

fn point_residual(
    spec: &PdeSpec,
    u: &dyn Fn(f64, f64) -> C,
    x: f64,
    t: f64,
    h: f64,
    stencils: &[Stencil],
) -> Result<f64> {
    let mut derivs = Vec::with_capacity(stencils.len());
    derivs.push(u(x, t));
    for st in &stencils[1..] {
        derivs.push(st.apply(|s| u(s, t), x, h));
    }
    let ut = stencils[1].apply(|s| u(x, s), t, h);
    if derivs.iter().chain([&ut]).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Evaluation {
            op: "spectral::pde_residual",
            msg: format!("candidate is not finite near (x, t) = ({x}, {t})"),
        });
    }
    let mut rhs = C::new(0.0, 0.0);
    for term in &spec.terms {
        let mut v = term.coeff;
        for f in &term.factors {
            v *= match *f {
                Factor::D(m) => derivs[m as usize],
                Factor::ConjD(m) => derivs[m as usize].conj(),
                Factor::X => C::new(x, 0.0),
            };
        }
        rhs += v;
    }
    Ok((spec.lhs * ut - rhs).norm())
}

/// Max residual over the window for steps `h0, h0/2, …` (`levels` of them).
pub fn pde_residual(
    spec: &PdeSpec,
    candidate: &dyn Fn(f64, f64) -> C,
    window: &ResidualWindow,
    accuracy: usize,
    h0: f64,
    levels: usize,
) -> Result<ResidualReport> {
    if !(h0 > 0.0) || levels == 0 || window.nx == 0 || window.nt == 0 {
        return Err(config("spectral::pde_residual", "need h0 > 0, at least one level and a non-empty window"));
    }
    let stencils = (0..=spec.max_order.max(1) as usize)
        .map(|m| Stencil::central(m.max(1), accuracy))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<ResidualRow> = Vec::with_capacity(levels);
    for l in 0..levels {
        let h = h0 / 2f64.powi(l as i32);
        let mut worst = 0.0f64;
        for (x, t) in window.points() {
            worst = worst.max(point_residual(spec, candidate, x, t, h, &stencils)?);
        }
        let ratio = rows.last().map(|r| r.residual / worst);
        rows.push(ResidualRow { h, residual: worst, ratio });
    }
    let max_residual = rows.last().map_or(0.0, |r| r.residual);
    let observed_order = rows.last().and_then(|r| r.ratio).filter(|r| r.is_finite() && *r > 0.0).map(f64::log2);
    Ok(ResidualReport { equation: spec.name.clone(), accuracy, rows, max_residual, observed_order })
}

/// `2κ² sech²(κ(x + 4κ²t))`
pub fn kdv_soliton(kappa: f64) -> impl Fn(f64, f64) -> C {
    move |x, t| {
        let s = 1.0 / (kappa * (x + 4.0 * kappa * kappa * t)).cosh();
        C::new(2.0 * kappa * kappa * s * s, 0.0)
    }
}

/// `√2 η sech(ηx) e^{−iη²t}`
pub fn nls_soliton(eta: f64) -> impl Fn(f64, f64) -> C {
    move |x, t| C::from_polar(2f64.sqrt() * eta / (eta * x).cosh(), -eta * eta * t)
}

#[derive(Debug, Clone, Serialize)]
pub struct SignResolution {
    /// sign `s` in `iu_t = u_xx + s|u|²u` with the smaller residual
    pub sign: f64,
    pub residual_plus: f64,
    pub residual_minus: f64,
}

/// Chooses the NLS sign by the residual of `candidate` under both signs.
pub fn resolve_nls_sign(
    candidate: &dyn Fn(f64, f64) -> C,
    window: &ResidualWindow,
    accuracy: usize,
    h: f64,
) -> Result<SignResolution> {
    let plus = pde_residual(&PdeSpec::nls(1.0), candidate, window, accuracy, h, 1)?.max_residual;
    let minus = pde_residual(&PdeSpec::nls(-1.0), candidate, window, accuracy, h, 1)?.max_residual;
    Ok(SignResolution { sign: if plus <= minus { 1.0 } else { -1.0 }, residual_plus: plus, residual_minus: minus })
}
