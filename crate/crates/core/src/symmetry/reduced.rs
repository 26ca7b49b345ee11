//! Symmetries of a scalar autonomous equation `a' = f(a)`.

use num::{One, Zero};

use crate::diffop::UPoly;
use crate::exprjet::{rat_int, Rat};

/// Basis of the polynomials `g` of degree at most `max_deg` with
/// `[f∂, g∂] = (f g' − g f')∂ = 0`, from the exact rational nullspace.
pub fn commuting_polynomials(f: &UPoly, max_deg: usize) -> Vec<UPoly> {
    let fd = f.derivative();
    let n = max_deg + 1;
    // column j holds the coefficients of f·(x^j)' − x^j·f'
    let cols: Vec<UPoly> = (0..n)
        .map(|j| {
            let xj = UPoly::monomial(Rat::one(), j);
            &(f * &xj.derivative()) - &(&xj * &fd)
        })
        .collect();
    let rows = cols.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|i| cols.iter().map(|c| c.coeffs().get(i).cloned().unwrap_or_else(Rat::zero)).collect())
        .collect();
    nullspace(&mut a, n).into_iter().map(UPoly::new).collect()
}

/// Polynomials `g` of degree at most `max_deg` commuting with the flow
/// `y' = √f(y)`: `[√f∂, g∂] = 0` is equivalent to `2f g' − g f' = 0`.
/// Nonzero solutions satisfy `g² ∝ f`, so they are multiples of the flow.
pub fn sqrt_flow_commutants(f: &UPoly, max_deg: usize) -> Vec<UPoly> {
    let fd = f.derivative();
    let two = UPoly::constant(rat_int(2));
    let cols: Vec<UPoly> = (0..=max_deg)
        .map(|j| {
            let xj = UPoly::monomial(Rat::one(), j);
            &(&(&two * f) * &xj.derivative()) - &(&xj * &fd)
        })
        .collect();
    let rows = cols.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|i| cols.iter().map(|c| c.coeffs().get(i).cloned().unwrap_or_else(Rat::zero)).collect())
        .collect();
    nullspace(&mut a, max_deg + 1).into_iter().map(UPoly::new).collect()
}

/// Reduced row echelon form in place; returns a basis of `{v : A v = 0}`.
fn nullspace(a: &mut [Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rat::one() / &a[r][c];
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (v, p) in a[i].iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); n];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// `Some(c)` with `g = c·f`, checked by exact division.
pub fn proportionality(g: &UPoly, f: &UPoly) -> Option<Rat> {
    if f.is_zero() {
        return g.is_zero().then(Rat::zero);
    }
    let (q, r) = g.div_rem(f);
    if r.is_zero() {
        q.as_constant()
    } else {
        None
    }
}
