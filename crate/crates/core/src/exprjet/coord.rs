use std::fmt;
use std::str::FromStr;

/// A coordinate of the jet space.
///
/// Ordering is `x < t < y < y1 < y2 < … < u0 < u1 < …`, which fixes the
/// canonical term order of every polynomial built on top of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JetCoord {
    X,
    T,
    /// `k`-th derivative of the ODE unknown `y`
    Y(u32),
    /// `k`-th spatial derivative of the PDE unknown `u`
    U(u32),
}

impl JetCoord {
    pub fn order(&self) -> Option<u32> {
        match self {
            JetCoord::Y(k) | JetCoord::U(k) => Some(*k),
            _ => None,
        }
    }
}

impl fmt::Display for JetCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetCoord::X => write!(f, "x"),
            JetCoord::T => write!(f, "t"),
            JetCoord::Y(0) => write!(f, "y"),
            JetCoord::Y(k) => write!(f, "y{k}"),
            JetCoord::U(k) => write!(f, "u{k}"),
        }
    }
}

impl FromStr for JetCoord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "x" => return Ok(JetCoord::X),
            "t" => return Ok(JetCoord::T),
            "y" => return Ok(JetCoord::Y(0)),
            "u" => return Ok(JetCoord::U(0)),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('y') {
            if !rest.is_empty() && rest.chars().all(|c| c == '\'') {
                return Ok(JetCoord::Y(rest.len() as u32));
            }
            if let Ok(k) = rest.parse::<u32>() {
                return Ok(JetCoord::Y(k));
            }
        }
        if let Some(rest) = s.strip_prefix('u') {
            if let Ok(k) = rest.parse::<u32>() {
                return Ok(JetCoord::U(k));
            }
        }
        Err(format!("unknown jet coordinate `{s}`"))
    }
}
