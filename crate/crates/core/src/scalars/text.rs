use super::expr::ScalarExpr;
use super::gauss::Gauss;
use super::laurent::{LPoly, VAR_NAMES};
use crate::error::{Error, Result};
use num_bigint::BigInt;

pub fn poly_to_string(p: &LPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().rev().enumerate() {
        let mut mono = Vec::new();
        for (k, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => mono.push(VAR_NAMES[k].to_string()),
                _ => mono.push(format!("{}^{}", VAR_NAMES[k], e)),
            }
        }
        let mono = mono.join("*");
        let term = if mono.is_empty() {
            c.to_string()
        } else if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{}", mono)
        } else {
            format!("{}*{}", c, mono)
        };
        if idx > 0 && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    out
}

/// Parses the text form of a scalar: sums, products, quotients and integer
/// powers of integers and the symbols `s`, `u`, `v`, `i` (and `q = s^2`).
pub fn parse_scalar(src: &str) -> Result<ScalarExpr> {
    let mut p = Parser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!("unexpected '{}' in scalar '{}'", p.chars[p.pos], src)));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ScalarExpr> {
        let mut neg = false;
        match self.peek() {
            Some('-') => {
                neg = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.power()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                '/' => {
                    self.pos += 1;
                    acc = acc.div(&self.power()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<ScalarExpr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.signed_int()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let mut neg = false;
        if self.peek() == Some('-') {
            neg = true;
            self.pos += 1;
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse("expected integer exponent".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = s.parse().map_err(|_| Error::Parse(format!("bad exponent '{}'", s)))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<ScalarExpr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('s') => {
                self.pos += 1;
                Ok(ScalarExpr::s_pow(1))
            }
            Some('q') => {
                self.pos += 1;
                Ok(ScalarExpr::s_pow(2))
            }
            Some('u') => {
                self.pos += 1;
                Ok(ScalarExpr::u())
            }
            Some('v') => {
                self.pos += 1;
                Ok(ScalarExpr::v())
            }
            Some('i') => {
                self.pos += 1;
                Ok(ScalarExpr::i())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad integer '{}'", s)))?;
                Ok(ScalarExpr::constant(Gauss::real(n.into())))
            }
            Some(c) => Err(Error::Parse(format!("unexpected '{}'", c))),
            None => Err(Error::Parse("unexpected end of scalar".into())),
        }
    }
}
