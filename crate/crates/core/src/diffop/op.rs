use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::RationalFn;
use super::upoly::UPoly;
use crate::error::{domain, Result};
use crate::exprjet::Rat;

/// `Σ c_k ∂^k` with rational-function coefficients. The leading coefficient
/// is never zero; the zero operator has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearDiffOp {
    coeffs: Vec<RationalFn>,
}

impl LinearDiffOp {
    pub fn new(mut coeffs: Vec<RationalFn>) -> Self {
        while coeffs.last().is_some_and(RationalFn::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::multiply_by(RationalFn::one())
    }

    /// The order-0 operator `ψ ↦ a ψ`.
    pub fn multiply_by(a: RationalFn) -> Self {
        Self::new(vec![a])
    }

    /// `∂^k`.
    pub fn d(k: usize) -> Self {
        let mut c = vec![RationalFn::zero(); k + 1];
        c[k] = RationalFn::one();
        Self::new(c)
    }

    /// Polynomial coefficients, lowest order first.
    pub fn from_polys(coeffs: Vec<UPoly>) -> Self {
        Self::new(coeffs.into_iter().map(RationalFn::from).collect())
    }

    pub fn coeffs(&self) -> &[RationalFn] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RationalFn {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `Some(a)` when this is multiplication by `a`.
    pub fn as_multiplier(&self) -> Option<RationalFn> {
        match self.coeffs.len() {
            0 => Some(RationalFn::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Left multiplication of every coefficient by `a`.
    pub fn left_scale(&self, a: &RationalFn) -> Self {
        Self::new(self.coeffs.iter().map(|c| a * c).collect())
    }
}

impl Add for &LinearDiffOp {
    type Output = LinearDiffOp;

    fn add(self, rhs: &LinearDiffOp) -> LinearDiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LinearDiffOp::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &LinearDiffOp {
    type Output = LinearDiffOp;

    fn sub(self, rhs: &LinearDiffOp) -> LinearDiffOp {
        self + &(-rhs)
    }
}

impl Neg for &LinearDiffOp {
    type Output = LinearDiffOp;

    fn neg(self) -> LinearDiffOp {
        LinearDiffOp::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LinearDiffOp {
    /// Writes the text syntax accepted by `parse_operator`,
    /// e.g. `(x^2)*d2 + (x)*d1 + (1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*d{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LinearDiffOp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearDiffOp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<RationalFn>::deserialize(d).map(LinearDiffOp::new)
    }
}

fn binomial(n: usize, k: usize) -> Rat {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(b)
}

/// `L ∘ M`, expanding `∂^i b = Σ_k C(i,k) b^(k) ∂^(i−k)` term by term.
pub fn compose(l: &LinearDiffOp, m: &LinearDiffOp) -> LinearDiffOp {
    let (Some(ol), Some(om)) = (l.order(), m.order()) else {
        return LinearDiffOp::zero();
    };
    let mut out = vec![RationalFn::zero(); ol + om + 1];
    for (j, b) in m.coeffs.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let mut derivs = vec![b.clone()];
        for _ in 0..ol {
            let next = derivs.last().expect("non-empty").derivative();
            derivs.push(next);
        }
        for (i, a) in l.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, bk) in derivs.iter().enumerate().take(i + 1) {
                if bk.is_zero() {
                    continue;
                }
                let term = (a * bk).scale(&binomial(i, k));
                let slot = i - k + j;
                out[slot] = &out[slot] + &term;
            }
        }
    }
    LinearDiffOp::new(out)
}

/// `[L, M] = L∘M − M∘L`.
pub fn commutator(l: &LinearDiffOp, m: &LinearDiffOp) -> LinearDiffOp {
    &compose(l, m) - &compose(m, l)
}

/// Signed Stirling numbers of the first kind `s(n, j)`, `j = 0..=n`:
/// the coefficients of the falling factorial `θ(θ−1)…(θ−n+1)`.
pub fn stirling_first(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for i in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, c) in row.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(i);
        }
        row = next;
    }
    row
}

/// Rewrites an Euler-form operator `Σ a_k x^k ∂^k` under `x = e^t`.
/// The result has constant coefficients and acts in `∂_t`.
pub fn euler_substitute(l: &LinearDiffOp) -> Result<LinearDiffOp> {
    const OP: &str = "diffop::euler_substitute";
    let Some(order) = l.order() else {
        return Ok(LinearDiffOp::zero());
    };
    let mut out = vec![Rat::zero(); order + 1];
    for (k, c) in l.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let a = c
            .as_poly()
            .filter(|p| p.coeffs().iter().take(k).all(Zero::is_zero) && p.degree() == Some(k))
            .map(UPoly::lead)
            .ok_or_else(|| {
                domain(OP, format!("coefficient of d{k} is `{c}`, expected a constant times x^{k}"))
            })?;
        for (j, s) in stirling_first(k).into_iter().enumerate() {
            out[j] += &a * Rat::from_integer(s);
        }
    }
    Ok(LinearDiffOp::new(out.into_iter().map(RationalFn::constant).collect()))
}

/// `Σ c_k f^(k)`, exact.
pub fn apply_op(l: &LinearDiffOp, f: &RationalFn) -> RationalFn {
    let mut out = RationalFn::zero();
    let mut dk = f.clone();
    for (k, c) in l.coeffs.iter().enumerate() {
        if k > 0 {
            dk = dk.derivative();
        }
        if !c.is_zero() && !dk.is_zero() {
            out = &out + &(c * &dk);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprjet::{rat, rat_int};

    fn p(c: &[i64]) -> RationalFn {
        UPoly::from_ints(c).into()
    }

    #[test]
    fn leibniz_examples() {
        let a: RationalFn = p(&[1, 2, 0, 5]);
        let ma = LinearDiffOp::multiply_by(a.clone());
        let d1 = compose(&LinearDiffOp::d(1), &ma);
        assert_eq!(d1, LinearDiffOp::new(vec![a.derivative(), a.clone()]));
        let d2 = compose(&LinearDiffOp::d(2), &ma);
        assert_eq!(
            d2,
            LinearDiffOp::new(vec![a.nth_derivative(2), a.derivative().scale(&rat_int(2)), a])
        );
        let l = LinearDiffOp::from_polys(vec![UPoly::from_ints(&[1]), UPoly::x(), UPoly::from_ints(&[0, 0, 3])]);
        assert_eq!(compose(&l, &LinearDiffOp::identity()), l);
        assert_eq!(compose(&LinearDiffOp::identity(), &l), l);
    }

    #[test]
    fn commutators() {
        let d = LinearDiffOp::d(1);
        assert!(commutator(&d, &d).is_zero());
        let xd = LinearDiffOp::new(vec![RationalFn::zero(), RationalFn::x()]);
        assert_eq!(commutator(&d, &xd), d);
        let a = p(&[0, 1, 3]);
        let b = RationalFn::new(UPoly::one(), UPoly::from_ints(&[1, 1]));
        let ad = LinearDiffOp::new(vec![RationalFn::zero(), a.clone()]);
        let bd = LinearDiffOp::new(vec![RationalFn::zero(), b.clone()]);
        let c = commutator(&ad, &bd);
        let expect = &(&a * &b.derivative()) - &(&a.derivative() * &b);
        assert_eq!(c, LinearDiffOp::new(vec![RationalFn::zero(), expect]));
    }

    #[test]
    fn euler_form() {
        let xk = |k: usize| {
            let mut c = vec![RationalFn::zero(); k + 1];
            c[k] = UPoly::x().pow(k as u32).into();
            LinearDiffOp::new(c)
        };
        let consts = |v: &[i64]| LinearDiffOp::new(v.iter().map(|&c| RationalFn::constant(rat_int(c))).collect());
        assert_eq!(euler_substitute(&xk(1)).unwrap(), consts(&[0, 1]));
        assert_eq!(euler_substitute(&xk(2)).unwrap(), consts(&[0, -1, 1]));
        assert_eq!(euler_substitute(&xk(3)).unwrap(), consts(&[0, 2, -3, 1]));
        // x^2 y'' + x y' + y  ->  y_tt + y
        let cauchy = &(&xk(2) + &xk(1)) + &LinearDiffOp::identity();
        assert_eq!(euler_substitute(&cauchy).unwrap(), consts(&[1, 0, 1]));
        let bad = LinearDiffOp::new(vec![RationalFn::zero(), p(&[1, 1])]);
        assert!(matches!(euler_substitute(&bad), Err(crate::Error::Domain { .. })));
        assert_eq!(stirling_first(4), [0, -6, 11, -6, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn application() {
        assert_eq!(apply_op(&LinearDiffOp::d(2), &p(&[0, 0, 0, 1])), p(&[0, 6]));
        // (d2 + 1)(x − x^3/6) = −x^3/6: only degree ≥ 3 survives
        let l = &LinearDiffOp::d(2) + &LinearDiffOp::identity();
        let s: RationalFn = UPoly::new(vec![rat_int(0), rat_int(1), rat_int(0), rat(-1, 6)]).into();
        let r = apply_op(&l, &s);
        assert_eq!(r, UPoly::monomial(rat(-1, 6), 3).into());
        assert!(apply_op(&l, &RationalFn::zero()).is_zero());
    }

    #[test]
    fn json_is_coefficient_array() {
        let l = LinearDiffOp::new(vec![RationalFn::one(), RationalFn::zero(), RationalFn::x()]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"[{"num":["1"],"den":["1"]},{"num":[],"den":["1"]},{"num":["0","1"],"den":["1"]}]"#);
        assert_eq!(serde_json::from_str::<LinearDiffOp>(&s).unwrap(), l);
    }
}
