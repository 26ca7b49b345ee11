use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use super::coord::JetCoord;
use super::poly::{JetPolynomial, Rat};
use crate::error::{domain, Result};

/// Vector field `Σ f_i ∂/∂y_i` over a declared list of coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetVectorField {
    domain: Vec<JetCoord>,
    components: BTreeMap<JetCoord, JetPolynomial>,
}

impl JetVectorField {
    /// Components are listed in the order of `domain`.
    pub fn new(domain: Vec<JetCoord>, components: Vec<JetPolynomial>) -> Result<Self> {
        const OP: &str = "exprjet::vector_field";
        let mut sorted = domain.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != domain.len() {
            return Err(domain_err(OP, "duplicate coordinate in domain"));
        }
        if components.len() != domain.len() {
            return Err(domain_err(
                OP,
                format!("{} components for {} coordinates", components.len(), domain.len()),
            ));
        }
        for p in &components {
            if let Some(c) = p.coords().into_iter().find(|c| !domain.contains(c)) {
                return Err(domain_err(OP, format!("component uses undeclared coordinate {c}")));
            }
        }
        Ok(Self {
            components: domain.iter().copied().zip(components).collect(),
            domain,
        })
    }

    pub fn zero(domain: Vec<JetCoord>) -> Self {
        let n = domain.len();
        Self::new(domain, vec![JetPolynomial::zero(); n]).expect("zero field is always valid")
    }

    pub fn domain(&self) -> &[JetCoord] {
        &self.domain
    }

    pub fn component(&self, c: JetCoord) -> Option<&JetPolynomial> {
        self.components.get(&c)
    }

    /// Components in domain order.
    pub fn components(&self) -> Vec<&JetPolynomial> {
        self.domain.iter().map(|c| &self.components[c]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(JetPolynomial::is_zero)
    }

    /// Multiplies every component by the polynomial `p`.
    pub fn scale_by(&self, p: &JetPolynomial) -> Result<Self> {
        Self::new(self.domain.clone(), self.components().into_iter().map(|c| c * p).collect())
    }

    /// `Some(c)` when `self = c · other` for a rational constant `c`.
    pub fn constant_multiple_of(&self, other: &JetVectorField) -> Option<Rat> {
        if self.domain != other.domain {
            return None;
        }
        let mut ratio: Option<Rat> = None;
        for c in &self.domain {
            let (a, b) = (&self.components[c], &other.components[c]);
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (false, true) => return None,
                (true, false) => {
                    if ratio.as_ref().is_some_and(|r| !r.is_zero()) {
                        return None;
                    }
                    ratio = Some(Rat::zero());
                }
                (false, false) => {
                    // compare leading terms, then verify the whole component
                    let (m, ca) = a.terms().next().expect("nonzero");
                    let cb = b.terms().find(|(mb, _)| *mb == m).map(|(_, v)| v.clone())?;
                    let r = ca / cb;
                    if b.scale(&r) != *a {
                        return None;
                    }
                    if ratio.as_ref().is_some_and(|q| *q != r) {
                        return None;
                    }
                    ratio = Some(r);
                }
            }
        }
        Some(ratio.unwrap_or_else(Rat::zero))
    }

    fn check_domain(&self, op: &'static str, p: &JetPolynomial) -> Result<()> {
        match p.coords().into_iter().find(|c| !self.domain.contains(c)) {
            Some(c) => Err(domain(op, format!("coordinate {c} is not in the field's domain"))),
            None => Ok(()),
        }
    }
}

fn domain_err(op: &'static str, msg: impl Into<String>) -> crate::Error {
    domain(op, msg)
}

impl fmt::Display for JetVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.domain.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.components[c])?;
        }
        write!(f, ")")
    }
}

/// `𝓛(F) = Σ f_i ∂F/∂y_i`.
pub fn apply_field(field: &JetVectorField, p: &JetPolynomial) -> Result<JetPolynomial> {
    field.check_domain("exprjet::apply_field", p)?;
    let mut out = JetPolynomial::zero();
    for c in p.coords() {
        let comp = &field.components[&c];
        if !comp.is_zero() {
            out = &out + &(comp * &p.diff(c));
        }
    }
    Ok(out)
}

/// `[f, g]_i = f(g_i) − g(f_i)`.
pub fn lie_bracket(f: &JetVectorField, g: &JetVectorField) -> Result<JetVectorField> {
    if f.domain != g.domain {
        return Err(domain("exprjet::lie_bracket", "vector fields have different domains"));
    }
    let comps = f
        .domain
        .iter()
        .map(|c| Ok(&apply_field(f, &g.components[c])? - &apply_field(g, &f.components[c])?))
        .collect::<Result<Vec<_>>>()?;
    JetVectorField::new(f.domain.clone(), comps)
}
