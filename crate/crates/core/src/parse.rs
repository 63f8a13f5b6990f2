//! Text grammars for localized polynomials and `U_q sl_2n` words.

use crate::error::{Error, Result};
use crate::qmatrix::{Gen, LocalizedVector, QMatrix, QPolynomial};
use crate::canonical;
use crate::scalars::{parse_scalar, ScalarExpr};
use crate::uqsl::{self, UGen, UWord};

/// Splits at top-level `+`/`-` (not inside brackets, not after `^`), keeping signs.
pub(crate) fn split_terms(src: &str) -> Vec<(bool, String)> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        let prev = if i > 0 { chars[i - 1] } else { ' ' };
        if depth == 0 && (c == '+' || c == '-') && prev != '^' && prev != '*' && prev != '/' {
            if !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            }
            neg = c == '-';
            continue;
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        out.push((neg, cur));
    }
    out
}

/// Splits at top-level occurrences of `sep`.
pub(crate) fn split_top(src: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in src.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index '{}'", t))))
        .collect()
}

fn parse_exponent(rest: &str) -> Result<i64> {
    if rest.is_empty() {
        return Ok(1);
    }
    let e = rest
        .strip_prefix('^')
        .ok_or_else(|| Error::Parse(format!("expected '^' in '{}'", rest)))?;
    e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent '{}'", e)))
}

/// Parses `term := [scalar '*'] factor ('*' factor)*` sums with factors
/// `z[a,b]^nat`, `det^int` and `minor(rows;cols)`.
pub fn parse_poly(alg: &QMatrix, src: &str) -> Result<LocalizedVector> {
    let mut pieces: Vec<(QPolynomial, i64)> = Vec::new();
    let terms = split_terms(src);
    if terms.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    for (neg, term) in terms {
        let mut coeff = if neg { ScalarExpr::int(-1) } else { ScalarExpr::one() };
        let mut poly = alg.one();
        let mut det = 0i64;
        for f in split_top(&term, '*') {
            if f.is_empty() {
                return Err(Error::Parse(format!("empty factor in '{}'", term)));
            }
            if let Some(rest) = f.strip_prefix("z[") {
                let close = rest.find(']').ok_or_else(|| Error::Parse("missing ']'".into()))?;
                let idx = parse_index_list(&rest[..close])?;
                if idx.len() != 2 {
                    return Err(Error::Parse(format!("generator needs two indices: '{}'", f)));
                }
                let e = parse_exponent(&rest[close + 1..])?;
                if e < 0 {
                    return Err(Error::Parse("generator exponents must be natural".into()));
                }
                let g = Gen::new(idx[0], idx[1]);
                alg.check_gen(g)?;
                for _ in 0..e {
                    poly = alg.poly_mul_gen(&poly, alg.gen_index(g));
                }
            } else if let Some(rest) = f.strip_prefix("det") {
                det += parse_exponent(rest)?;
            } else if let Some(rest) = f.strip_prefix("minor(") {
                let close = rest.rfind(')').ok_or_else(|| Error::Parse("missing ')'".into()))?;
                let inner = &rest[..close];
                let (r, c) = inner
                    .split_once(';')
                    .ok_or_else(|| Error::Parse("minor needs 'rows;cols'".into()))?;
                let e = parse_exponent(&rest[close + 1..])?;
                let m = alg.q_minor(&parse_index_list(r)?, &parse_index_list(c)?)?;
                for _ in 0..e.max(0) {
                    poly = alg.mul(&poly, &m);
                }
            } else {
                coeff = coeff.mul(&parse_scalar(&f)?);
            }
        }
        pieces.push((poly.scale(&coeff), det));
    }
    let dmin = pieces.iter().map(|p| p.1).min().unwrap_or(0).min(0);
    let mut out = LocalizedVector::new(QPolynomial::zero(), -dmin);
    for (p, d) in pieces {
        let lift = alg.raise_det_power(&LocalizedVector::new(p, -d), -dmin);
        out.poly = out.poly.add(&lift.poly);
    }
    Ok(out)
}

/// Parses `U_q sl_2n` words: sums of products of `E i`, `F i`, `K i`,
/// `Kinv i`, scalars (bare or parenthesized), the builders `Fmj(m,j)`,
/// `Srt(r,t)`, `Gmj(m,j)` and `ad(word; word)`. Errors carry the column.
pub fn parse_word(src: &str) -> Result<UWord> {
    let mut p = WordParser { chars: src.chars().collect(), pos: 0 };
    let w = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(w)
}

struct WordParser {
    chars: Vec<char>,
    pos: usize,
}

impl WordParser {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{} at column {}", msg, self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c)))
        }
    }

    fn starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars())
    }

    fn nat(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an index"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("index too large"))
    }

    fn sum(&mut self) -> Result<UWord> {
        let mut acc = UWord::zero();
        let mut neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.product()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => neg = false,
                Some('-') => neg = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<UWord> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn pair(&mut self) -> Result<(usize, usize)> {
        self.eat('(')?;
        let a = self.nat()?;
        self.eat(',')?;
        let b = self.nat()?;
        self.eat(')')?;
        Ok((a, b))
    }

    fn factor(&mut self) -> Result<UWord> {
        self.skip_ws();
        let at = self.pos;
        for (name, f) in [
            ("Fmj", canonical::build_fmj as fn(usize, usize) -> Result<UWord>),
            ("Srt", canonical::build_srt),
            ("Gmj", canonical::build_gmj),
        ] {
            if self.starts_with(name) {
                self.pos += 3;
                let (a, b) = self.pair()?;
                return f(a, b).map_err(|e| Error::Parse(format!("{} at column {}", e, at + 1)));
            }
        }
        if self.starts_with("ad(") {
            self.pos += 3;
            let a = self.sum()?;
            self.eat(';')?;
            let b = self.sum()?;
            self.eat(')')?;
            return Ok(uqsl::ad(&a, &b));
        }
        let gen: Option<fn(usize) -> UGen> = if self.starts_with("Kinv") {
            self.pos += 4;
            Some(UGen::Kinv)
        } else {
            let g: Option<fn(usize) -> UGen> = match self.peek() {
                Some('E') => Some(UGen::E),
                Some('F') => Some(UGen::F),
                Some('K') => Some(UGen::K),
                _ => None,
            };
            if g.is_some() {
                self.pos += 1;
            }
            g
        };
        if let Some(g) = gen {
            let i = self.nat()?;
            if i == 0 {
                return Err(self.err("generator indices start at 1"));
            }
            return Ok(UWord::gen(g(i)));
        }
        match self.peek() {
            Some('(') => {
                let close = self.matching_paren()?;
                let inner: String = self.chars[self.pos + 1..close].iter().collect();
                if let Ok(c) = parse_scalar(&inner) {
                    self.pos = close + 1;
                    return Ok(UWord::scalar(c));
                }
                self.pos += 1;
                let w = self.sum()?;
                self.eat(')')?;
                Ok(w)
            }
            Some(c) if c.is_ascii_digit() || "suvqi".contains(c) => {
                let start = self.pos;
                while let Some(&c) = self.chars.get(self.pos) {
                    let after_caret = self.pos > start && self.chars[self.pos - 1] == '^';
                    if c.is_ascii_alphanumeric() || c == '^' || c == '/' || (c == '-' && after_caret) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                parse_scalar(&text).map(UWord::scalar).map_err(|e| Error::Parse(format!("{} at column {}", e, start + 1)))
            }
            Some(c) => Err(self.err(&format!("unexpected '{}'", c))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn matching_paren(&self) -> Result<usize> {
        let mut depth = 0;
        for (i, &c) in self.chars.iter().enumerate().skip(self.pos) {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(i);
                    }
                }
                _ => {}
            }
        }
        Err(self.err("unbalanced '('"))
    }
}
