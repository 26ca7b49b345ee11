use super::coord::JetCoord;
use super::poly::JetPolynomial;

/// Total x-derivative: `D_x = ∂_x + Σ u_{k+1} ∂/∂u_k` (and likewise for `y`).
pub fn total_derivative(p: &JetPolynomial) -> JetPolynomial {
    let mut out = JetPolynomial::zero();
    for c in p.coords() {
        let dc = match c {
            JetCoord::X => JetPolynomial::one(),
            JetCoord::T => continue,
            JetCoord::Y(k) => JetPolynomial::var(JetCoord::Y(k + 1)),
            JetCoord::U(k) => JetPolynomial::var(JetCoord::U(k + 1)),
        };
        out = &out + &(&p.diff(c) * &dc);
    }
    out
}

/// `[K, D_x K, …, D_x^depth K]`: the right-hand sides of the evolution of
/// `u, u_1, …, u_depth` under `u_t = K`.
pub fn prolong(k: &JetPolynomial, depth: usize) -> Vec<JetPolynomial> {
    let mut out = Vec::with_capacity(depth + 1);
    out.push(k.clone());
    for _ in 0..depth {
        let next = total_derivative(out.last().expect("non-empty"));
        out.push(next);
    }
    out
}
