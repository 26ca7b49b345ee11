use serde::Serialize;

use crate::error::{contract, domain, Result};
use crate::exprjet::{apply_field, lie_bracket, rat_to_f64, JetCoord, JetPolynomial, JetVectorField, Rat};

/// `dy/dt = f(y)` over an ordered list of jet coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalSystem {
    field: JetVectorField,
}

impl DynamicalSystem {
    pub fn new(field: JetVectorField) -> Self {
        Self { field }
    }

    pub fn from_components(coords: Vec<JetCoord>, comps: Vec<JetPolynomial>) -> Result<Self> {
        JetVectorField::new(coords, comps).map(Self::new)
    }

    /// `y^(n) = rhs` written as `(1, y', …, y^(n−1), rhs)` over
    /// `(x, y, y', …, y^(n−1))`, with `dt = dx`.
    pub fn canonical(order: u32, rhs: JetPolynomial) -> Result<Self> {
        let mut coords = vec![JetCoord::X];
        let mut comps = vec![JetPolynomial::one()];
        for k in 0..order {
            coords.push(JetCoord::Y(k));
            comps.push(if k + 1 < order { JetPolynomial::var(JetCoord::Y(k + 1)) } else { rhs.clone() });
        }
        Self::from_components(coords, comps)
    }

    pub fn coords(&self) -> &[JetCoord] {
        self.field.domain()
    }

    pub fn field(&self) -> &JetVectorField {
        &self.field
    }

    /// First coordinate is `x` with component 1.
    pub fn is_canonical(&self) -> bool {
        self.coords().first() == Some(&JetCoord::X)
            && self.field.components()[0].as_constant() == Some(Rat::from_integer(1.into()))
    }

    /// Floating-point right-hand side over states ordered like `coords`.
    pub fn rhs(&self) -> impl Fn(f64, &[f64]) -> Result<Vec<f64>> + Send + Sync {
        let comps: Vec<CompiledPoly> =
            self.field.components().into_iter().map(|p| CompiledPoly::new(p, self.coords())).collect();
        move |_t, y| Ok(comps.iter().map(|c| c.eval(y)).collect())
    }
}

/// A polynomial with `f64` coefficients indexed by state slot.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl CompiledPoly {
    /// Every coordinate of `p` must appear in `coords`.
    pub fn new(p: &JetPolynomial, coords: &[JetCoord]) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let powers = m
                    .powers()
                    .iter()
                    .map(|(v, e)| {
                        let slot = coords.iter().position(|c| c == v).expect("coordinate in domain");
                        (slot, *e as i32)
                    })
                    .collect();
                (rat_to_f64(c), powers)
            })
            .collect();
        Self { terms }
    }

    pub fn eval(&self, y: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, p)| p.iter().fold(*c, |acc, (i, e)| acc * y[*i].powi(*e)))
            .sum()
    }
}

/// `dy/dτ = g(y)` proposed as a symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryCandidate {
    pub field: JetVectorField,
    pub tau_label: String,
}

impl SymmetryCandidate {
    pub fn new(field: JetVectorField, tau_label: impl Into<String>) -> Self {
        Self { field, tau_label: tau_label.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClVerdict {
    pub holds: bool,
    /// `𝓛(F)`; zero exactly when `F` is conserved.
    pub residual: JetPolynomial,
}

pub fn is_conservation_law(sys: &DynamicalSystem, f: &JetPolynomial) -> Result<ClVerdict> {
    let residual = apply_field(&sys.field, f)?;
    Ok(ClVerdict { holds: residual.is_zero(), residual })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryVerdict {
    pub symmetry: bool,
    /// `g = c·f` for a rational constant `c`.
    pub trivial: bool,
    pub bracket: JetVectorField,
}

/// JSON shape `{symmetry, trivial, bracket}` with the bracket as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub symmetry: bool,
    pub trivial: bool,
    pub bracket: String,
}

impl SymmetryVerdict {
    pub fn report(&self) -> SymmetryReport {
        SymmetryReport { symmetry: self.symmetry, trivial: self.trivial, bracket: self.bracket.to_string() }
    }
}

pub fn is_symmetry(sys: &DynamicalSystem, cand: &SymmetryCandidate) -> Result<SymmetryVerdict> {
    let bracket = lie_bracket(&sys.field, &cand.field)?;
    Ok(SymmetryVerdict {
        symmetry: bracket.is_zero(),
        trivial: cand.field.constant_multiple_of(&sys.field).is_some(),
        bracket,
    })
}

/// `F·g`, a symmetry whenever `g` is one and `F` is conserved.
pub fn scale_symmetry(sys: &DynamicalSystem, cand: &SymmetryCandidate, f: &JetPolynomial) -> Result<SymmetryCandidate> {
    const OP: &str = "symmetry::scale_symmetry";
    let cl = is_conservation_law(sys, f)?;
    if !cl.holds {
        return Err(contract(OP, format!("`{f}` is not conserved: L(F) = {}", cl.residual)));
    }
    if !is_symmetry(sys, cand)?.symmetry {
        return Err(contract(OP, "candidate is not a symmetry of the system"));
    }
    let scaled = SymmetryCandidate::new(cand.field.scale_by(f)?, format!("({f})*{}", cand.tau_label));
    let check = is_symmetry(sys, &scaled)?;
    if !check.symmetry {
        return Err(contract(OP, format!("scaled field failed the bracket check: {}", check.bracket)));
    }
    Ok(scaled)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G0Check {
    pub g0: JetPolynomial,
    /// `false` when `g0 = 0` and the check does not apply.
    pub applies: bool,
    pub conservation_law: bool,
    /// `g / g0`, available when `g0` is a nonzero constant.
    pub normalized: Option<JetVectorField>,
}

/// For a canonical system, the `x`-component of a symmetry is conserved.
pub fn corollary_g0_check(sys: &DynamicalSystem, cand: &SymmetryCandidate) -> Result<G0Check> {
    const OP: &str = "symmetry::corollary_g0_check";
    if !sys.is_canonical() {
        return Err(contract(OP, "system is not in canonical form (first component must be 1 on x)"));
    }
    if cand.field.domain() != sys.coords() {
        return Err(domain(OP, "candidate and system use different coordinates"));
    }
    let g0 = cand.field.components()[0].clone();
    if g0.is_zero() {
        return Ok(G0Check { g0, applies: false, conservation_law: false, normalized: None });
    }
    let conservation_law = is_conservation_law(sys, &g0)?.holds;
    let normalized = match g0.as_constant() {
        Some(c) => Some(cand.field.scale_by(&JetPolynomial::constant(Rat::from_integer(1.into()) / c))?),
        None => None,
    };
    Ok(G0Check { g0, applies: true, conservation_law, normalized })
}
