//! Parameter canonicalization, the pairing `(alpha,beta) ~ (-n-beta,-n-alpha)`,
//! the intertwiner coefficients `a_k`, and operator-level checks of the
//! intertwiner and of the det shift.

use crate::action::{Rep, Untwisted};
use crate::error::{Error, Result};
use crate::isotypic::{Decomposer, Signature};
use crate::linalg::MonomialBasis;
use crate::qmatrix::{LocalizedVector, QMatrix};
use crate::report::{Check, Report};
use crate::scalars::{Gauss, LPoly, Mono, ParameterPoint, QExp, ScalarExpr, Twist, TwistMode};
use crate::transitions::window;
use crate::uqsl::UGen;
use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Canonical {
    pub alpha: ParameterPoint,
    pub beta: ParameterPoint,
    /// `(alpha, beta) = (alpha' + m, beta' - m)`.
    pub shift: i64,
}

/// Moves `(alpha, beta)` along `(alpha-1, beta+1)` until `alpha - beta` is 0 or 1.
pub fn canonicalize(alpha: ParameterPoint, beta: ParameterPoint) -> Result<Canonical> {
    let d = alpha.re - beta.re;
    if alpha.im_units != beta.im_units || !d.is_integer() {
        return Err(Error::Usage(format!("alpha - beta = {} - {} is not an integer", alpha, beta)));
    }
    let m = Integer::div_floor(&d.to_integer(), &2);
    Ok(Canonical { alpha: alpha.shift(-m), beta: beta.shift(m), shift: m })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceClass {
    pub members: Vec<(ParameterPoint, ParameterPoint)>,
}

/// `(-n-beta, -n-alpha)`; with imaginary part `pi/h` the `2 pi i/h` shift keeps it at `pi/h`.
pub fn partner_point(n: usize, alpha: ParameterPoint, beta: ParameterPoint) -> (ParameterPoint, ParameterPoint) {
    let n = n as i64;
    (beta.neg().shift(-n), alpha.neg().shift(-n))
}

pub fn partner(n: usize, alpha: ParameterPoint, beta: ParameterPoint) -> EquivalenceClass {
    if alpha.is_integer() && beta.is_integer() {
        return EquivalenceClass { members: vec![(alpha, beta)] };
    }
    let other = partner_point(n, alpha, beta);
    let mut members = vec![(alpha, beta)];
    if other != (alpha, beta) {
        members.push(other);
    }
    EquivalenceClass { members }
}

/// `1 - q^{2(x)}` for `x = sign*param + c`.
fn one_minus(twist: &Twist, x: QExp) -> ScalarExpr {
    ScalarExpr::one().sub(&twist.q_pow(x.times(2)))
}

/// `a_k = prod_j P_j(alpha, beta)`, normalized by `a_0 = 1`.
pub fn a_coeff(k: &Signature, twist: &Twist) -> Result<ScalarExpr> {
    let n = k.n() as i64;
    let mut num = ScalarExpr::one();
    let mut den = ScalarExpr::one();
    for (idx, &kj) in k.0.iter().enumerate() {
        let j = idx as i64 + 1;
        if kj > 0 {
            for i in 0..kj {
                num = num.mul(&one_minus(twist, QExp::alpha().plus_int(n + i - j + 1)));
                den = den.mul(&one_minus(twist, QExp::beta().neg().plus_int(i - j + 1)));
            }
        } else {
            for i in kj + 1..=0 {
                num = num.mul(&one_minus(twist, QExp::beta().neg().plus_int(i - j)));
                den = den.mul(&one_minus(twist, QExp::alpha().plus_int(n + i - j)));
            }
        }
    }
    num.div(&den).map_err(|_| Error::Pole)
}

/// The two ratio recurrences for `a_{k +- e_j} / a_k`.
pub fn recurrence_ratio(k: &Signature, j: usize, up: bool, twist: &Twist) -> Result<ScalarExpr> {
    let n = k.n() as i64;
    let kj = k.0[j - 1];
    let j = j as i64;
    let (pw, top, bottom) = if up {
        (
            QExp::alpha().plus(QExp::beta()).plus_int(n),
            QExp::alpha().neg().plus_int(-n - kj + j - 1),
            QExp::beta().plus_int(-kj + j - 1),
        )
    } else {
        (
            QExp::alpha().plus(QExp::beta()).plus_int(n).neg(),
            QExp::beta().neg().plus_int(kj - j),
            QExp::alpha().plus_int(kj + n - j),
        )
    };
    twist.q_pow(pw).mul(&twist.qint(top)).div(&twist.qint(bottom)).map_err(|_| Error::Pole)
}

pub fn check_recurrences(n: usize, bound: i64, twist: &Twist) -> Result<Report> {
    let mut r = Report::new("intertwiner recurrences");
    r.push(Check::new("a_0 = 1", vec![], a_coeff(&Signature::zero(n), twist)?.is_one()));
    for k in window(n, bound) {
        let ak = a_coeff(&k, twist)?;
        for j in 1..=n {
            for up in [true, false] {
                let t = k.shifted(j, if up { 1 } else { -1 });
                if !t.is_dominant() {
                    continue;
                }
                let lhs = a_coeff(&t, twist)?.div(&ak)?;
                let rhs = recurrence_ratio(&k, j, up, twist)?;
                let mut idx = k.0.clone();
                idx.push(j as i64);
                let name = if up { "a_{k+e_j}/a_k" } else { "a_{k-e_j}/a_k" };
                r.push(Check::new(name, idx, lhs == rhs));
            }
        }
    }
    Ok(r)
}

/// Pole of `a_k` at `q^{2 alpha} = q^{2 point}` (symbolic twist, fixed `d`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Pole {
    pub alpha: i64,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleReport {
    pub poles: Vec<Pole>,
    /// The denominator has no `u`-dependence beyond the listed poles.
    pub only_integral: bool,
}

impl PoleReport {
    pub fn all_simple(&self) -> bool {
        self.poles.iter().all(|p| p.order == 1)
    }
}

/// Splits the denominator of `e` into factors `u^2 - q^{2a}`.
pub fn poles_in_u(e: &ScalarExpr, search: i64) -> PoleReport {
    let mut den = e.denom().clone();
    let mut poles = Vec::new();
    for a in -search..=search {
        let f = LPoly::monomial(Mono::var(1, 2), Gauss::one()).sub(&LPoly::monomial(Mono::var(0, 4 * a as i32), Gauss::one()));
        let mut order = 0;
        while let Some(rest) = den.div_exact(&f) {
            den = rest;
            order += 1;
        }
        if order > 0 {
            poles.push(Pole { alpha: a, order });
        }
    }
    let mut exps = den.terms().iter().map(|(m, _)| m.0[1]);
    let first = exps.next();
    let only_integral = exps.all(|x| Some(x) == first);
    PoleReport { poles, only_integral }
}

pub fn check_poles(n: usize, bound: i64, d: i64) -> Result<Report> {
    let twist = Twist::symbolic(d);
    let mut r = Report::new("intertwiner poles");
    let search = (n as i64 + bound) * 2 + d.abs() + 2;
    for k in window(n, bound) {
        let pr = poles_in_u(&a_coeff(&k, &twist)?, search);
        let detail = format!("{:?}", pr.poles);
        r.push(Check::new("poles at integral alpha only", k.0.clone(), pr.only_integral).with_detail(detail.clone()));
        r.push(Check::new("poles are simple", k.0.clone(), pr.all_simple()).with_detail(detail));
    }
    Ok(r)
}

/// The twist of `pi_{-n-beta,-n-alpha}` over the same field as `twist`.
pub fn partner_twist(n: usize, twist: &Twist) -> Result<Twist> {
    let c = ScalarExpr::s_pow(-2 * n as i32);
    let qa = c.mul(&twist.qb.inv()?);
    let qb = c.mul(&twist.qa.inv()?);
    Ok(Twist::from_exprs(qa, qb, twist.d, twist.mode.clone()))
}

/// The twist of `pi_{alpha-1, beta+1}`.
pub fn shifted_twist(twist: &Twist) -> Twist {
    let qa = twist.qa.mul(&ScalarExpr::s_pow(-2));
    let qb = twist.qb.mul(&ScalarExpr::s_pow(2));
    let mode = match &twist.mode {
        TwistMode::Symbolic { d } => TwistMode::Symbolic { d: d - 2 },
        TwistMode::Concrete { alpha, beta } => TwistMode::Concrete { alpha: alpha.shift(-1), beta: beta.shift(1) },
    };
    Twist::from_exprs(qa, qb, twist.d.map(|d| d - 2), mode)
}

/// Monomial basis vectors of the pieces `(degree, det power)` with degree up to
/// `max_degree` and det power up to `max_det`.
pub fn window_vectors(alg: &QMatrix, max_degree: usize, max_det: i64) -> Vec<LocalizedVector> {
    let mut out = Vec::new();
    for p in 0..=max_det {
        for deg in 0..=max_degree {
            let b = MonomialBasis::new(alg, deg, p);
            for i in 0..b.len() {
                let mut v = vec![ScalarExpr::zero(); b.len()];
                v[i] = ScalarExpr::one();
                out.push(b.vector(&v));
            }
        }
    }
    out
}

/// `A` acting diagonally by `a_k` on each `V_k`.
pub struct Intertwiner {
    pub decomposer: Decomposer,
    pub twist: Twist,
    cache: std::sync::Mutex<BTreeMap<Signature, ScalarExpr>>,
}

impl Intertwiner {
    pub fn new(base: std::sync::Arc<Untwisted>, twist: Twist) -> Intertwiner {
        Intertwiner { decomposer: Decomposer::new(base), twist, cache: Default::default() }
    }

    pub fn coefficient(&self, k: &Signature) -> Result<ScalarExpr> {
        if let Some(a) = self.cache.lock().unwrap().get(k) {
            return Ok(a.clone());
        }
        let a = a_coeff(k, &self.twist)?;
        self.cache.lock().unwrap().insert(k.clone(), a.clone());
        Ok(a)
    }

    pub fn apply(&self, x: &LocalizedVector) -> Result<LocalizedVector> {
        let alg = self.decomposer.base().alg();
        let mut out = LocalizedVector::zero();
        for (k, part) in self.decomposer.split(x)? {
            out = alg.loc_add(&out, &part.scale(&self.coefficient(&k)?));
        }
        Ok(out)
    }
}

fn generators(n: usize) -> Vec<UGen> {
    (1..2 * n).flat_map(|i| [UGen::E(i), UGen::F(i), UGen::K(i)]).collect()
}

/// `A pi_{alpha,beta}(g) x = pi_{-n-beta,-n-alpha}(g) A x` for every generator and window vector.
pub fn intertwine_verify(n: usize, d: i64, max_degree: usize, max_det: i64) -> Result<Report> {
    let alg = QMatrix::new(n);
    let base = Untwisted::new(alg);
    let twist = Twist::symbolic(d);
    let lhs_rep = Rep::twisted(base.clone(), twist.clone());
    let rhs_rep = Rep::twisted(base.clone(), partner_twist(n, &twist)?);
    let a = Intertwiner::new(base.clone(), twist);
    let alg = base.alg();
    let mut r = Report::new("intertwiner");
    for (xi, x) in window_vectors(alg, max_degree, max_det).iter().enumerate() {
        let ax = a.apply(x)?;
        for g in generators(n) {
            let lhs = a.apply(&lhs_rep.act_gen(g, x)?)?;
            let rhs = rhs_rep.act_gen(g, &ax)?;
            r.push(Check::new(format!("A {} = {} A", g, g), vec![xi as i64], alg.loc_equal(&lhs, &rhs)));
        }
    }
    Ok(r)
}

/// `T(f) = f det^{-1}` satisfies `T pi_{alpha-1,beta+1}(g) = pi_{alpha,beta}(g) T`.
/// With `reversed` the opposite pairing `T pi_{alpha,beta}(g) = pi_{alpha-1,beta+1}(g) T` is tested.
pub fn det_shift_verify(n: usize, twist: &Twist, max_degree: usize, max_det: i64, reversed: bool) -> Result<Report> {
    let alg = QMatrix::new(n);
    let base = Untwisted::new(alg);
    let (inner, outer) = {
        let p = Rep::twisted(base.clone(), twist.clone());
        let s = Rep::twisted(base.clone(), shifted_twist(twist));
        if reversed { (p, s) } else { (s, p) }
    };
    let alg = base.alg();
    let t = |x: &LocalizedVector| LocalizedVector::new(x.poly.clone(), x.det_power + 1);
    let mut r = Report::new("det shift");
    for (xi, x) in window_vectors(alg, max_degree, max_det).iter().enumerate() {
        for g in generators(n) {
            let lhs = t(&inner.act_gen(g, x)?);
            let rhs = outer.act_gen(g, &t(x))?;
            r.push(Check::new(format!("T {} = {} T", g, g), vec![xi as i64], alg.loc_equal(&lhs, &rhs)));
        }
    }
    Ok(r)
}
