//! Text syntax for operators. Products are compositions, so `x*d1` is
//! `x∂` while `d1*x` is `x∂ + 1`.
//!
//! ```text
//! expr   := term { ('+' | '-') term }
//! term   := unary { ('*' | '/') unary }      divisors must be order 0
//! unary  := ('-' | '+') unary | power
//! power  := atom [ '^' integer ]
//! atom   := number | 'x' | 'd' | 'd' integer | '(' expr ')'
//! ```
//!
//! Example: `(x^2)*d2 + x*d1 + 1`.

use num::{BigInt, One, Zero};

use super::op::{compose, LinearDiffOp};
use super::rational::RationalFn;
use crate::error::{config, Result};
use crate::exprjet::Rat;

const OP: &str = "diffop::parse";

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    X,
    D(usize),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && (chars[*i].is_ascii_digit() || chars[*i] == '.') {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        match chars[i] {
            c if c.is_whitespace() => i += 1,
            c @ ('+' | '-' | '*' | '/' | '^' | '(' | ')') => {
                out.push(Tok::Sym(c));
                i += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let text = digits(&mut i);
                out.push(Tok::Num(decimal(&text)?));
            }
            'x' => {
                out.push(Tok::X);
                i += 1;
            }
            'd' => {
                i += 1;
                let text = digits(&mut i);
                let k = if text.is_empty() {
                    1
                } else {
                    text.parse().map_err(|_| config(OP, format!("bad derivative order `d{text}`")))?
                };
                out.push(Tok::D(k));
            }
            c => return Err(config(OP, format!("unexpected character `{c}` at offset {i}"))),
        }
    }
    Ok(out)
}

fn decimal(text: &str) -> Result<Rat> {
    let bad = || config(OP, format!("malformed number `{text}`"));
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return Err(bad());
    }
    let n: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(Rat::new(n, num::pow(BigInt::from(10), frac.len())))
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Sym(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<LinearDiffOp> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LinearDiffOp> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' { compose(&acc, &rhs) } else { divide(&acc, &rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LinearDiffOp> {
        match self.peek_sym() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LinearDiffOp> {
        let base = self.atom()?;
        if self.peek_sym() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.toks.get(self.pos) {
            Some(Tok::Num(n)) if n.is_integer() => u32::try_from(n.to_integer())
                .map_err(|_| config(OP, "exponent out of range"))?,
            other => return Err(config(OP, format!("expected integer exponent, found {other:?}"))),
        };
        self.pos += 1;
        Ok((0..e).fold(LinearDiffOp::identity(), |acc, _| compose(&acc, &base)))
    }

    fn atom(&mut self) -> Result<LinearDiffOp> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(n)) => Ok(LinearDiffOp::multiply_by(RationalFn::constant(n))),
            Some(Tok::X) => Ok(LinearDiffOp::multiply_by(RationalFn::x())),
            Some(Tok::D(k)) => Ok(LinearDiffOp::d(k)),
            Some(Tok::Sym('(')) => {
                let e = self.expr()?;
                match self.toks.get(self.pos) {
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(config(OP, "missing `)`")),
                }
            }
            other => Err(config(OP, format!("unexpected token {other:?}"))),
        }
    }
}

fn divide(a: &LinearDiffOp, b: &LinearDiffOp) -> Result<LinearDiffOp> {
    let q = b
        .as_multiplier()
        .ok_or_else(|| config(OP, format!("cannot divide by the differential operator `{b}`")))?;
    let inv = q.recip().ok_or_else(|| config(OP, "division by zero"))?;
    if let Some(num) = a.as_multiplier() {
        return Ok(LinearDiffOp::multiply_by(&num * &inv));
    }
    match q.as_constant() {
        Some(c) if !c.is_zero() => Ok(a.left_scale(&RationalFn::constant(Rat::one() / c))),
        _ => Err(config(OP, "only constants may divide an operator of positive order")),
    }
}

pub fn parse_operator(s: &str) -> Result<LinearDiffOp> {
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
