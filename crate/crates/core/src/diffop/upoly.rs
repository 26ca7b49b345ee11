use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::exprjet::{rat_int, rat_to_f64, Rat};

/// Univariate polynomial in `x` with rational coefficients, lowest degree
/// first; trailing zeros are trimmed so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rat_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.0.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * rat_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, a| acc * x + rat_to_f64(a))
    }

    pub fn eval_exact(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, a| acc * x + a)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        let mut rem = self.0.clone();
        let mut quo = vec![Rat::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = &rem[k] / &lead;
            for (i, b) in d.0.iter().enumerate() {
                rem[k - dd + i] -= &c * b;
            }
            quo[k - dd] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::new(quo), UPoly::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.lead()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.0.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UPoly {
    type Output = UPoly;

    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Rat::zero);
                    let b = rhs.0.get(i).cloned().unwrap_or_else(Rat::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl Sub for &UPoly {
    type Output = UPoly;

    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;

    fn neg(self) -> UPoly {
        UPoly(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;

    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = &UPoly::from_ints(&[-1, 1]) * &UPoly::from_ints(&[2, 1]);
        let b = &UPoly::from_ints(&[-1, 1]) * &UPoly::from_ints(&[-3, 1]);
        assert_eq!(UPoly::gcd(&a, &b), UPoly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&UPoly::from_ints(&[-1, 1]));
        assert_eq!(q, UPoly::from_ints(&[2, 1]));
        assert!(r.is_zero());
        let (q, r) = UPoly::from_ints(&[1, 0, 1]).div_rem(&UPoly::from_ints(&[0, 1]));
        assert_eq!((q, r), (UPoly::from_ints(&[0, 1]), UPoly::from_ints(&[1])));
    }

    #[test]
    fn derivative_and_display() {
        let p = UPoly::from_ints(&[5, 0, -3, 1]);
        assert_eq!(p.derivative(), UPoly::from_ints(&[0, -6, 3]));
        assert_eq!(p.to_string(), "x^3 - 3*x^2 + 5");
        assert_eq!(p.eval(2.0), 1.0);
    }
}
