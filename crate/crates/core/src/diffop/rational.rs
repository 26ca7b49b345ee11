use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::upoly::UPoly;
use crate::exprjet::Rat;

/// Quotient of polynomials in `x`, kept reduced with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: UPoly,
    den: UPoly,
}

impl RationalFn {
    /// Panics when `den` is the zero polynomial.
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = UPoly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = Rat::one() / den.lead();
        Self { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn try_new(num: UPoly, den: UPoly) -> Option<Self> {
        (!den.is_zero()).then(|| Self::new(num, den))
    }

    pub fn zero() -> Self {
        Self { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self { num: UPoly::constant(c), den: UPoly::one() }
    }

    pub fn x() -> Self {
        UPoly::x().into()
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(p)` when the denominator is 1.
    pub fn as_poly(&self) -> Option<&UPoly> {
        (self.den == UPoly::one()).then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.as_poly().and_then(UPoly::as_constant)
    }

    pub fn recip(&self) -> Option<Self> {
        Self::try_new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(top, &self.den * &self.den)
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.derivative())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.num.eval(x) / self.den.eval(x)
    }

    pub fn eval_exact(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval_exact(x);
        (!d.is_zero()).then(|| self.num.eval_exact(x) / d)
    }
}

impl Default for RationalFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<UPoly> for RationalFn {
    fn from(p: UPoly) -> Self {
        Self { num: p, den: UPoly::one() }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;

    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;

    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;

    fn neg(self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;

    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalFnRepr {
    num: Vec<String>,
    den: Vec<String>,
}

fn to_strings(p: &UPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn from_strings(v: &[String]) -> std::result::Result<UPoly, String> {
    v.iter()
        .map(|s| s.trim().parse::<Rat>().map_err(|e| format!("bad rational `{s}`: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(UPoly::new)
}

/// Serialized as `{"num": ["c0", "c1", …], "den": [...]}` with exact
/// rational strings, lowest degree first.
impl Serialize for RationalFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalFnRepr { num: to_strings(&self.num), den: to_strings(&self.den) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RationalFnRepr::deserialize(d)?;
        let num = from_strings(&r.num).map_err(serde::de::Error::custom)?;
        let den = from_strings(&r.den).map_err(serde::de::Error::custom)?;
        RationalFn::try_new(num, den).ok_or_else(|| serde::de::Error::custom("zero denominator"))
    }
}
