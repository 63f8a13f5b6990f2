use super::gauss::Gauss;
use super::gcd::{gcd, leading_coeff};
use super::laurent::{LPoly, Mono};
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of `Q(i)(s, u, v)` with `s = q^{1/2}`, `u = q^alpha`, `v = q^beta`.
///
/// The representation is canonical: numerator and denominator are coprime, the
/// denominator carries no monomial factor and has leading coefficient 1 in
/// grlex order. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ScalarExpr {
    num: LPoly,
    den: LPoly,
}

impl Default for ScalarExpr {
    fn default() -> Self {
        ScalarExpr::zero()
    }
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr { num: LPoly::zero(), den: LPoly::one() }
    }

    pub fn one() -> Self {
        ScalarExpr { num: LPoly::one(), den: LPoly::one() }
    }

    pub fn from_poly(p: LPoly) -> Self {
        ScalarExpr { num: p, den: LPoly::one() }
    }

    pub fn constant(c: Gauss) -> Self {
        ScalarExpr::from_poly(LPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        ScalarExpr::constant(Gauss::int(n))
    }

    pub fn i() -> Self {
        ScalarExpr::constant(Gauss::i())
    }

    /// `c * s^a u^b v^c`.
    pub fn monomial(exps: [i32; 3], c: Gauss) -> Self {
        ScalarExpr::from_poly(LPoly::monomial(Mono(exps), c))
    }

    pub fn s_pow(e: i32) -> Self {
        ScalarExpr::monomial([e, 0, 0], Gauss::one())
    }

    /// `q^e = s^{2e}`.
    pub fn q_pow(e: i32) -> Self {
        ScalarExpr::s_pow(2 * e)
    }

    pub fn u() -> Self {
        ScalarExpr::monomial([0, 1, 0], Gauss::one())
    }

    pub fn v() -> Self {
        ScalarExpr::monomial([0, 0, 1], Gauss::one())
    }

    /// Builds and canonicalizes `num / den`.
    pub fn fraction(num: LPoly, den: LPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LPoly, den: LPoly) -> Self {
        if num.is_zero() {
            return ScalarExpr::zero();
        }
        let (num, den) = if den.is_unit() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Self::normalize_units(num, den)
    }

    fn normalize_units(num: LPoly, den: LPoly) -> Self {
        let m = den.min_mono().inv();
        let (num, den) = if m.is_one() { (num, den) } else { (num.shift(&m), den.shift(&m)) };
        let lc = leading_coeff(&den);
        if lc.is_one() {
            ScalarExpr { num, den }
        } else {
            let inv = lc.inv();
            ScalarExpr { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &LPoly {
        &self.num
    }

    pub fn denom(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Laurent polynomial (trivial denominator).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn uses_var(&self, k: usize) -> bool {
        self.num.uses_var(k) || self.den.uses_var(k)
    }

    /// Constant value when the expression involves no variable.
    pub fn as_constant(&self) -> Option<Gauss> {
        if self.num.is_zero() {
            return Some(Gauss::zero());
        }
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.terms()[0].1.clone())
        } else {
            None
        }
    }

    pub fn add(&self, o: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return ScalarExpr { num, den: self.den.clone() };
            }
            return Self::canonical(num, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Self::canonical(num, self.den.mul(&o.den));
        }
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        Self::canonical(num, a.mul(&o.den))
    }

    pub fn neg(&self) -> ScalarExpr {
        ScalarExpr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &ScalarExpr) -> ScalarExpr {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() || o.is_zero() {
            return ScalarExpr::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return ScalarExpr { num: self.num.mul(&o.num), den: LPoly::one() };
        }
        // both operands are reduced, so cancelling across is enough
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d2 = if g1.is_one() { o.den.clone() } else { o.den.div_exact(&g1).unwrap() };
        let n2 = if g2.is_one() { o.num.clone() } else { o.num.div_exact(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        Self::normalize_units(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<ScalarExpr> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_units(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &ScalarExpr) -> Result<ScalarExpr> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<ScalarExpr> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = ScalarExpr::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Gauss) -> ScalarExpr {
        if c.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Complex conjugation of coefficients; the variables are treated as real.
    pub fn conj(&self) -> ScalarExpr {
        Self::normalize_units(self.num.conj(), self.den.conj())
    }

    /// Substitutes variables by Laurent polynomials.
    pub fn substitute(&self, subs: &[Option<LPoly>; 3]) -> Result<ScalarExpr> {
        let n = self.num.substitute(subs).ok_or(Error::Pole)?;
        let d = self.den.substitute(subs).ok_or(Error::Pole)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(Self::canonical(n, d))
    }

    /// `(a * b)` with a Laurent polynomial multiplier.
    pub fn mul_poly(&self, p: &LPoly) -> ScalarExpr {
        self.mul(&ScalarExpr::from_poly(p.clone()))
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", super::text::poly_to_string(&self.num))
        } else {
            write!(
                f,
                "({})/({})",
                super::text::poly_to_string(&self.num),
                super::text::poly_to_string(&self.den)
            )
        }
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, o: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::add(self, o)
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, o: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::sub(self, o)
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, o: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::mul(self, o)
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(self)
    }
}

impl serde::Serialize for ScalarExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
