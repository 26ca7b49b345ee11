use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use super::coord::JetCoord;

/// Exact rational coefficient.
pub type Rat = num::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Product of coordinate powers, stored sorted by coordinate with nonzero
/// exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(JetCoord, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(c: JetCoord) -> Self {
        Self(vec![(c, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (JetCoord, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (c, e) in powers {
            if e > 0 {
                let slot = m.entry(c).or_insert(0u32);
                *slot = slot.checked_add(e).expect("jet exponent overflow");
            }
        }
        Self(m.into_iter().collect())
    }

    pub fn powers(&self) -> &[(JetCoord, u32)] {
        &self.0
    }

    pub fn exponent(&self, c: JetCoord) -> u32 {
        self.0.iter().find(|(k, _)| *k == c).map_or(0, |(_, e)| *e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `∂/∂c` of the monomial as (multiplier, monomial), or `None` if `c` is absent.
    pub fn diff(&self, c: JetCoord) -> Option<(u32, Monomial)> {
        let e = self.exponent(c);
        if e == 0 {
            return None;
        }
        let rest = self
            .0
            .iter()
            .map(|&(k, x)| if k == c { (k, x - 1) } else { (k, x) })
            .filter(|(_, x)| *x > 0)
            .collect();
        Some((e, Monomial(rest)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over jet coordinates with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct JetPolynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl JetPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    pub fn var(c: JetCoord) -> Self {
        Self::from_terms([(Monomial::var(c), Rat::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coords(&self) -> Vec<JetCoord> {
        let mut v: Vec<JetCoord> = self.terms.keys().flat_map(|m| m.powers().iter().map(|(c, _)| *c)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Highest `k` among the `u_k` coordinates present.
    pub fn max_u_order(&self) -> Option<u32> {
        self.coords()
            .into_iter()
            .filter_map(|c| if let JetCoord::U(k) = c { Some(k) } else { None })
            .max()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn diff(&self, c: JetCoord) -> Self {
        let mut out = Self::zero();
        for (m, k) in &self.terms {
            if let Some((e, rest)) = m.diff(c) {
                out.add_term(rest, k * rat_int(e as i64));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes polynomials for coordinates.
    pub fn substitute(&self, map: &BTreeMap<JetCoord, JetPolynomial>) -> Self {
        let mut out = Self::zero();
        for (m, k) in &self.terms {
            let mut t = Self::constant(k.clone());
            for (c, e) in m.powers() {
                let base = map.get(c).cloned().unwrap_or_else(|| Self::var(*c));
                t = &t * &base.pow(*e);
            }
            out = &out + &t;
        }
        out
    }

    /// Floating-point evaluation; coordinates absent from `value` are an error.
    pub fn eval(&self, value: impl Fn(JetCoord) -> Option<f64>) -> Option<f64> {
        let mut acc = 0.0;
        for (m, k) in &self.terms {
            let mut t = rat_to_f64(k);
            for (c, e) in m.powers() {
                t *= value(*c)?.powi(*e as i32);
            }
            acc += t;
        }
        Some(acc)
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for JetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let is_unit = mag.is_one();
            if m.powers().is_empty() {
                write!(f, "{mag}")?;
            } else if is_unit {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &JetPolynomial {
    type Output = JetPolynomial;

    fn add(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &JetPolynomial {
    type Output = JetPolynomial;

    fn sub(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &JetPolynomial {
    type Output = JetPolynomial;

    fn mul(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = JetPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &JetPolynomial {
    type Output = JetPolynomial;

    fn neg(self) -> JetPolynomial {
        self.scale(&-Rat::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for JetPolynomial {
            type Output = JetPolynomial;

            fn $m(self, rhs: JetPolynomial) -> JetPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for JetPolynomial {
    type Output = JetPolynomial;

    fn neg(self) -> JetPolynomial {
        -&self
    }
}
