use crate::error::{contract, domain, Result};
use crate::exprjet::{prolong, JetCoord, JetPolynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdeSymmetryVerdict {
    pub symmetric: bool,
    /// `K_f'[K_g] − K_g'[K_f]`
    pub bracket: JetPolynomial,
}

/// Order in `u` of an evolutionary right-hand side; 0 when `u` is absent.
fn order(k: &JetPolynomial) -> Result<usize> {
    if let Some(c) = k.coords().into_iter().find(|c| !matches!(c, JetCoord::U(_) | JetCoord::X)) {
        return Err(domain("symmetry::pde_symmetry_check", format!("coordinate {c} is not u_k or x")));
    }
    Ok(k.max_u_order().unwrap_or(0) as usize)
}

/// Smallest jet depth accepted by [`pde_symmetry_check`].
pub fn min_depth(k_f: &JetPolynomial, k_g: &JetPolynomial) -> Result<usize> {
    Ok(order(k_f)? + order(k_g)? + 1)
}

/// `K'[Q] = Σ_j ∂K/∂u_j · D_x^j Q`, using the prolongation of `Q` to `depth`.
fn frechet(k: &JetPolynomial, q: &JetPolynomial, depth: usize) -> JetPolynomial {
    let dq = prolong(q, depth);
    let mut out = JetPolynomial::zero();
    for c in k.coords() {
        if let JetCoord::U(j) = c {
            out = &out + &(&k.diff(c) * &dq[j as usize]);
        }
    }
    out
}

/// Whether the flows `u_t = K_f` and `u_τ = K_g` commute, from the
/// cross-derivative identity `(u_t)_τ = (u_τ)_t` on jets truncated at `depth`.
pub fn pde_symmetry_check(k_f: &JetPolynomial, k_g: &JetPolynomial, depth: usize) -> Result<PdeSymmetryVerdict> {
    let need = min_depth(k_f, k_g)?;
    if depth < need {
        return Err(contract(
            "symmetry::pde_symmetry_check",
            format!("jet depth {depth} is too small, need at least {need}"),
        ));
    }
    let bracket = &frechet(k_f, k_g, depth) - &frechet(k_g, k_f, depth);
    Ok(PdeSymmetryVerdict { symmetric: bracket.is_zero(), bracket })
}
