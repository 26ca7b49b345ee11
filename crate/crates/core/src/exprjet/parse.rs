//! Text syntax for jet polynomials.
//!
//! ```text
//! expr   := term { ('+' | '-') term }
//! term   := unary { ('*' | '/') unary }      division only by constants
//! unary  := ('-' | '+') unary | power
//! power  := atom [ '^' integer ]
//! atom   := number | coord | '(' expr ')'
//! number := digits [ '.' digits ]            decimals are read exactly
//! coord  := x | t | y | y<k> | y'… | u | u<k>
//! ```
//!
//! Example: `2*u0*u1 + 1/3*u2`.

use num::{BigInt, One, Zero};

use super::coord::JetCoord;
use super::poly::{JetPolynomial, Rat};
use crate::error::{config, Result};

const OP: &str = "exprjet::parse";

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(parse_decimal(&text)?));
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(config(OP, format!("unexpected character `{other}` at offset {i}"))),
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Result<Rat> {
    let bad = || config(OP, format!("malformed number `{text}`"));
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if int.is_empty() && frac.is_empty() || frac.contains('.') {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num::pow(BigInt::from(10), frac.len());
    Ok(Rat::new(num, den))
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<JetPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<JetPolynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let c = d
                        .as_constant()
                        .ok_or_else(|| config(OP, format!("division by non-constant `{d}`")))?;
                    if c.is_zero() {
                        return Err(config(OP, "division by zero"));
                    }
                    acc = acc.scale(&(Rat::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<JetPolynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<JetPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| config(OP, "exponent out of range"))?;
                    return Ok(base.pow(e));
                }
                other => return Err(config(OP, format!("expected integer exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<JetPolynomial> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(JetPolynomial::constant(n)),
            Some(Tok::Ident(name)) => {
                let c: JetCoord = name.parse().map_err(|e: String| config(OP, e))?;
                Ok(JetPolynomial::var(c))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(config(OP, "missing `)`")),
                }
            }
            other => Err(config(OP, format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_polynomial(s: &str) -> Result<JetPolynomial> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(config(OP, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(config(OP, format!("trailing input after token {}", p.pos)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprjet::poly::{rat, rat_int};

    #[test]
    fn documented_example() {
        let p = parse_polynomial("2*u0*u1 + 1/3*u2").unwrap();
        let u = |k| JetPolynomial::var(JetCoord::U(k));
        assert_eq!(p, &(&u(0) * &u(1)).scale(&rat_int(2)) + &u(2).scale(&rat(1, 3)));
    }

    #[test]
    fn precedence_and_parens() {
        let p = parse_polynomial("-(x - 1)^2 + 0.5*y'").unwrap();
        let x = JetPolynomial::var(JetCoord::X);
        let expect = &(-(&x - &JetPolynomial::one()).pow(2)) + &JetPolynomial::var(JetCoord::Y(1)).scale(&rat(1, 2));
        assert_eq!(p, expect);
        assert_eq!(parse_polynomial("2^3").unwrap(), JetPolynomial::int(8));
    }

    #[test]
    fn display_round_trip() {
        for s in ["2*u0*u1 + 1/3*u2", "y1 - x", "y + 1/2*x^2 - x*y1", "-7/4"] {
            let p = parse_polynomial(s).unwrap();
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p, "{s}");
        }
    }

    #[test]
    fn errors() {
        for bad in ["", "u0 +", "x/y", "1/0", "z1", "(x", "x^y", "1.2.3", "x # 2"] {
            assert!(parse_polynomial(bad).is_err(), "{bad}");
        }
    }
}
