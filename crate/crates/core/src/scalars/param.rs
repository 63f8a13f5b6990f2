use super::expr::ScalarExpr;
use super::gauss::{ratio_to_f64, Gauss};
use super::laurent::LPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// A parameter `re + im_units * (i*pi/h)` with `q = e^{-h/2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ParameterPoint {
    pub re: Rational64,
    pub im_units: u8,
}

impl ParameterPoint {
    pub fn new(re: Rational64, im_units: u8) -> Result<Self> {
        if im_units > 1 {
            return Err(Error::Usage(format!("im_units must be 0 or 1, got {}", im_units)));
        }
        Ok(ParameterPoint { re, im_units })
    }

    pub fn real(re: Rational64) -> Self {
        ParameterPoint { re, im_units: 0 }
    }

    pub fn int(n: i64) -> Self {
        ParameterPoint::real(Rational64::from_integer(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ParameterPoint::real(Rational64::new(n, d))
    }

    pub fn parse(re: &str, im_units: u8) -> Result<Self> {
        let re = parse_rational(re)?;
        ParameterPoint::new(re, im_units)
    }

    pub fn is_integer(&self) -> bool {
        self.im_units == 0 && self.re.is_integer()
    }

    /// Integer value when the point is a real integer.
    pub fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    /// `q^{im_units * i*pi/h}`, i.e. `1` or `-i`.
    pub fn zeta(&self) -> Gauss {
        if self.im_units == 1 {
            -Gauss::i()
        } else {
            Gauss::one()
        }
    }

    /// `2*re` when it is an integer.
    pub fn two_re(&self) -> Option<i32> {
        let t = self.re * 2;
        if t.is_integer() {
            t.to_integer().to_i32()
        } else {
            None
        }
    }

    /// Exact `q^param = zeta * s^{2 re}` when `2 re` is an integer.
    pub fn q_pow_exact(&self) -> Option<ScalarExpr> {
        self.two_re().map(|e| ScalarExpr::monomial([e, 0, 0], self.zeta()))
    }

    pub fn neg(&self) -> ParameterPoint {
        ParameterPoint { re: -self.re, im_units: self.im_units }
    }

    pub fn shift(&self, k: i64) -> ParameterPoint {
        ParameterPoint { re: self.re + k, im_units: self.im_units }
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if self.im_units == 1 {
            write!(f, "+i*pi/h")?;
        }
        Ok(())
    }
}

impl Serialize for ParameterPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ParameterPoint", 2)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("im_units", &self.im_units)?;
        st.end()
    }
}

pub fn parse_rational(src: &str) -> Result<Rational64> {
    let src = src.trim();
    let bad = || Error::Usage(format!("not a rational number: '{}'", src));
    if let Some((n, d)) = src.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational64::new(n, d))
    } else {
        Ok(Rational64::from_integer(src.parse().map_err(|_| bad())?))
    }
}

/// An exponent `half/2 + a*alpha + b*beta`, so that `q^x = s^half u^a v^b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct QExp {
    pub half: i64,
    pub a: i64,
    pub b: i64,
}

impl QExp {
    pub fn int(c: i64) -> Self {
        QExp { half: 2 * c, a: 0, b: 0 }
    }

    pub fn half(h: i64) -> Self {
        QExp { half: h, a: 0, b: 0 }
    }

    pub fn alpha() -> Self {
        QExp { half: 0, a: 1, b: 0 }
    }

    pub fn beta() -> Self {
        QExp { half: 0, a: 0, b: 1 }
    }

    pub fn plus(self, o: QExp) -> QExp {
        QExp { half: self.half + o.half, a: self.a + o.a, b: self.b + o.b }
    }

    pub fn plus_int(self, c: i64) -> QExp {
        self.plus(QExp::int(c))
    }

    pub fn neg(self) -> QExp {
        QExp { half: -self.half, a: -self.a, b: -self.b }
    }

    pub fn times(self, k: i64) -> QExp {
        QExp { half: self.half * k, a: self.a * k, b: self.b * k }
    }

    /// `q^x` with `u = q^alpha`, `v = q^beta` left symbolic.
    pub fn q_pow(self) -> ScalarExpr {
        ScalarExpr::monomial([self.half as i32, self.a as i32, self.b as i32], Gauss::one())
    }
}

/// `[x]_q = (q^x - q^{-x}) / (q - q^{-1})`, as a symbolic scalar.
pub fn qint(x: QExp) -> ScalarExpr {
    qint_of(&x.q_pow(), &x.neg().q_pow())
}

/// `[x]_q` given `q^x` and `q^{-x}`.
pub fn qint_of(qx: &ScalarExpr, qmx: &ScalarExpr) -> ScalarExpr {
    qx.sub(qmx).div(&q_minus_qinv()).expect("q - q^-1 is nonzero")
}

pub fn q_minus_qinv() -> ScalarExpr {
    ScalarExpr::q_pow(1).sub(&ScalarExpr::q_pow(-1))
}

/// How `u = q^alpha` and `v = q^beta` enter the twisted action.
#[derive(Clone, Debug, PartialEq)]
pub enum TwistMode {
    /// `alpha, beta` symbolic with `alpha - beta = d`, i.e. `v = u s^{-2d}`.
    Symbolic { d: i64 },
    /// Fixed parameter values.
    Concrete { alpha: ParameterPoint, beta: ParameterPoint },
}

/// Resolved twist data: the scalars standing for `q^alpha` and `q^beta`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub qa: ScalarExpr,
    pub qb: ScalarExpr,
    /// `alpha - beta` when it is an integer (weight modules).
    pub d: Option<i64>,
    pub mode: TwistMode,
}

impl Twist {
    pub fn new(mode: TwistMode) -> Twist {
        match &mode {
            TwistMode::Symbolic { d } => Twist {
                qa: ScalarExpr::u(),
                qb: ScalarExpr::monomial([-2 * *d as i32, 1, 0], Gauss::one()),
                d: Some(*d),
                mode,
            },
            TwistMode::Concrete { alpha, beta } => {
                let diff = alpha.re - beta.re;
                let d = if alpha.im_units == beta.im_units && diff.is_integer() {
                    Some(diff.to_integer())
                } else {
                    None
                };
                match (alpha.q_pow_exact(), beta.q_pow_exact()) {
                    (Some(qa), Some(qb)) => Twist { qa, qb, d, mode },
                    _ => match d {
                        Some(d) => {
                            // keep u symbolic; v is tied to it
                            let ratio = &beta.zeta() * &alpha.zeta().inv();
                            Twist {
                                qa: ScalarExpr::u(),
                                qb: ScalarExpr::monomial([-2 * d as i32, 1, 0], ratio),
                                d: Some(d),
                                mode,
                            }
                        }
                        None => Twist { qa: ScalarExpr::u(), qb: ScalarExpr::v(), d: None, mode },
                    },
                }
            }
        }
    }

    pub fn symbolic(d: i64) -> Twist {
        Twist::new(TwistMode::Symbolic { d })
    }

    pub fn concrete(alpha: ParameterPoint, beta: ParameterPoint) -> Twist {
        Twist::new(TwistMode::Concrete { alpha, beta })
    }

    /// Twist with explicitly given `q^alpha`, `q^beta` (used for intertwiner partners).
    pub fn from_exprs(qa: ScalarExpr, qb: ScalarExpr, d: Option<i64>, mode: TwistMode) -> Twist {
        Twist { qa, qb, d, mode }
    }

    /// `q^x` for `x = half/2 + a alpha + b beta`.
    pub fn q_pow(&self, x: QExp) -> ScalarExpr {
        let mut acc = ScalarExpr::s_pow(x.half as i32);
        acc = acc.mul(&self.qa.pow(x.a).expect("q^alpha is a unit"));
        acc.mul(&self.qb.pow(x.b).expect("q^beta is a unit"))
    }

    pub fn qint(&self, x: QExp) -> ScalarExpr {
        qint_of(&self.q_pow(x), &self.q_pow(x.neg()))
    }

    /// Rewrites a scalar written in the raw symbols `u = q^alpha`, `v = q^beta`
    /// into this twist's conventions.
    pub fn resolve(&self, e: &ScalarExpr) -> Result<ScalarExpr> {
        let as_poly = |x: &ScalarExpr| -> Option<LPoly> {
            if x.is_laurent() {
                Some(x.numer().clone())
            } else {
                None
            }
        };
        match (as_poly(&self.qa), as_poly(&self.qb)) {
            (Some(a), Some(b)) if a.is_unit() && b.is_unit() => e.substitute(&[None, Some(a), Some(b)]),
            _ => Err(Error::Unsupported("twist scalars must be monomials".into())),
        }
    }

    pub fn alpha_beta(&self) -> Option<(ParameterPoint, ParameterPoint)> {
        match self.mode {
            TwistMode::Concrete { alpha, beta } => Some((alpha, beta)),
            _ => None,
        }
    }
}

/// Value of a specialized scalar: exact when all exponents land in `Z`.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Gauss),
    Approx(f64, f64),
}

impl Value {
    pub fn to_f64(&self) -> (f64, f64) {
        match self {
            Value::Exact(g) => g.to_f64(),
            Value::Approx(a, b) => (*a, *b),
        }
    }

    pub fn exact(&self) -> Option<&Gauss> {
        match self {
            Value::Exact(g) => Some(g),
            _ => None,
        }
    }
}

fn float_pow(base: f64, e: f64) -> f64 {
    base.powf(e)
}

/// Evaluates `e` at `s = s0`, `u = q^alpha`, `v = q^beta`.
pub fn specialize(
    e: &ScalarExpr,
    s0: &BigRational,
    alpha: &ParameterPoint,
    beta: &ParameterPoint,
) -> Result<Value> {
    if s0.is_zero() || s0.is_negative() {
        return Err(Error::Usage("s0 must be positive".into()));
    }
    let exact_point = |p: &ParameterPoint| -> Option<Gauss> {
        p.two_re().map(|k| &p.zeta() * &Gauss::real(rat_pow(s0, k as i64)))
    };
    if let (Some(ua), Some(vb)) = (exact_point(alpha), exact_point(beta)) {
        let n = eval_exact(e.numer(), s0, &ua, &vb);
        let d = eval_exact(e.denom(), s0, &ua, &vb);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        return Ok(Value::Exact(&n / &d));
    }
    let sf = ratio_to_f64(s0);
    let pt = |p: &ParameterPoint| -> (f64, f64) {
        let m = float_pow(sf, 2.0 * ratio64_to_f64(&p.re));
        if p.im_units == 1 {
            (0.0, -m)
        } else {
            (m, 0.0)
        }
    };
    let (n, nscale) = eval_float(e.numer(), sf, pt(alpha), pt(beta));
    let (d, dscale) = eval_float(e.denom(), sf, pt(alpha), pt(beta));
    let dn = (d.0 * d.0 + d.1 * d.1).sqrt();
    if dn <= 1e-12 * dscale.max(1e-300) {
        return Err(Error::Pole);
    }
    let _ = nscale;
    let den = d.0 * d.0 + d.1 * d.1;
    Ok(Value::Approx((n.0 * d.0 + n.1 * d.1) / den, (n.1 * d.0 - n.0 * d.1) / den))
}

fn ratio64_to_f64(r: &Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn rat_pow(b: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { b.recip() } else { b.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn eval_exact(p: &LPoly, s0: &BigRational, u: &Gauss, v: &Gauss) -> Gauss {
    let mut acc = Gauss::zero();
    for (m, c) in p.terms() {
        let t = &(&(c * &Gauss::real(rat_pow(s0, m.0[0] as i64))) * &u.pow(m.0[1] as i64))
            * &v.pow(m.0[2] as i64);
        acc += &t;
    }
    acc
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cpow(a: (f64, f64), e: i32) -> (f64, f64) {
    let (base, k) = if e < 0 {
        let n = a.0 * a.0 + a.1 * a.1;
        ((a.0 / n, -a.1 / n), -e)
    } else {
        (a, e)
    };
    let mut acc = (1.0, 0.0);
    for _ in 0..k {
        acc = cmul(acc, base);
    }
    acc
}

fn eval_float(p: &LPoly, s: f64, u: (f64, f64), v: (f64, f64)) -> ((f64, f64), f64) {
    let mut acc = (0.0, 0.0);
    let mut scale = 0.0;
    for (m, c) in p.terms() {
        let cf = c.to_f64();
        let t = cmul(cmul(cmul(cf, (s.powi(m.0[0]), 0.0)), cpow(u, m.0[1])), cpow(v, m.0[2]));
        scale += (t.0 * t.0 + t.1 * t.1).sqrt();
        acc = (acc.0 + t.0, acc.1 + t.1);
    }
    (acc, scale)
}

/// Convenience: the rational `n/d` as a `BigRational`.
pub fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
