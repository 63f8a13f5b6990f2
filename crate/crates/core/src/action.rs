//! The `U_q sl_2n`-module algebra structure on `C[Mat_n]_{q,det}` and the
//! twisted representations `pi_{alpha,beta}`.

use crate::error::{Error, Result};
use crate::qmatrix::{Gen, LocalizedVector, Monomial, QMatrix, QPolynomial};
use crate::scalars::{ScalarExpr, Twist};
use crate::uqsl::{UGen, UWord};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Untwisted action of `U_q sl_2n` on `C[Mat_n]_q`, memoized on monomials.
pub struct Untwisted {
    alg: Arc<QMatrix>,
    cache: Mutex<HashMap<(UGen, Monomial), QPolynomial>>,
}

impl std::fmt::Debug for Untwisted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Untwisted(n={})", self.alg.n())
    }
}

fn sqrt_q(e: i32) -> ScalarExpr {
    ScalarExpr::s_pow(e)
}

impl Untwisted {
    pub fn new(alg: Arc<QMatrix>) -> Arc<Untwisted> {
        Arc::new(Untwisted { alg, cache: Mutex::new(HashMap::new()) })
    }

    pub fn alg(&self) -> &Arc<QMatrix> {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn rank(&self) -> usize {
        2 * self.n() - 1
    }

    /// Exponent of `q` by which `K_k` acts on `z_a^b`.
    pub fn gen_weight(&self, k: usize, g: Gen) -> i32 {
        let n = self.n();
        let (a, b) = (g.a, g.b);
        if k == n {
            (a == n) as i32 + (b == n) as i32
        } else if k < n {
            (a == k) as i32 - (a == k + 1) as i32
        } else {
            (b == 2 * n - k) as i32 - (b == 2 * n - k + 1) as i32
        }
    }

    pub fn mono_weight(&self, k: usize, m: &Monomial) -> i32 {
        m.0.iter()
            .enumerate()
            .map(|(i, &e)| e as i32 * self.gen_weight(k, self.alg.gen_of(i)))
            .sum()
    }

    fn z(&self, a: usize, b: usize) -> QPolynomial {
        self.alg.gen(a, b)
    }

    /// `E_k` and `F_k` on a single generator.
    fn on_gen(&self, g: UGen, x: Gen) -> QPolynomial {
        let n = self.n();
        let (a, b) = (x.a, x.b);
        match g {
            UGen::F(k) if k == n => {
                if a == n && b == n {
                    self.alg.one().scale(&sqrt_q(1))
                } else {
                    QPolynomial::zero()
                }
            }
            UGen::F(k) if k < n => {
                if a == k {
                    self.z(a + 1, b).scale(&sqrt_q(1))
                } else {
                    QPolynomial::zero()
                }
            }
            UGen::F(k) => {
                if b == 2 * n - k {
                    self.z(a, b + 1).scale(&sqrt_q(1))
                } else {
                    QPolynomial::zero()
                }
            }
            UGen::E(k) if k == n => {
                let c = sqrt_q(1).neg();
                if a != n && b != n {
                    self.alg.mul(&self.z(a, n), &self.z(n, b)).scale(&c.mul(&ScalarExpr::q_pow(-1)))
                } else if a == n && b == n {
                    self.alg.mul(&self.z(n, n), &self.z(n, n)).scale(&c)
                } else {
                    self.alg.mul(&self.z(n, n), &self.z(a, b)).scale(&c)
                }
            }
            UGen::E(k) if k < n => {
                if a == k + 1 {
                    self.z(a - 1, b).scale(&sqrt_q(-1))
                } else {
                    QPolynomial::zero()
                }
            }
            UGen::E(k) => {
                if b == 2 * n - k + 1 {
                    self.z(a, b - 1).scale(&sqrt_q(-1))
                } else {
                    QPolynomial::zero()
                }
            }
            UGen::K(_) | UGen::Kinv(_) => unreachable!("K acts diagonally"),
        }
    }

    /// Action of a generator on a normal monomial, through the module-algebra rule.
    pub fn on_monomial(&self, g: UGen, m: &Monomial) -> QPolynomial {
        match g {
            UGen::K(k) => {
                return QPolynomial::monomial(m.clone(), ScalarExpr::q_pow(self.mono_weight(k, m)))
            }
            UGen::Kinv(k) => {
                return QPolynomial::monomial(m.clone(), ScalarExpr::q_pow(-self.mono_weight(k, m)))
            }
            _ => {}
        }
        let key = (g, m.clone());
        if let Some(p) = self.cache.lock().unwrap().get(&key) {
            return p.clone();
        }
        let letters = m.letters();
        let n = self.n();
        let k = g.index();
        let mut out = QPolynomial::zero();
        for p in 0..letters.len() {
            let x = self.alg.gen_of(letters[p]);
            let act = self.on_gen(g, x);
            if act.is_zero() {
                continue;
            }
            let mut prefix = Monomial::one(n);
            for &l in &letters[..p] {
                prefix.0[l] += 1;
            }
            let wt: i32 = match g {
                UGen::E(_) => letters[..p].iter().map(|&l| self.gen_weight(k, self.alg.gen_of(l))).sum(),
                _ => -letters[p + 1..].iter().map(|&l| self.gen_weight(k, self.alg.gen_of(l))).sum::<i32>(),
            };
            let mut term = self.alg.mul(&QPolynomial::monomial(prefix, ScalarExpr::q_pow(wt)), &act);
            for &l in &letters[p + 1..] {
                term = self.alg.poly_mul_gen(&term, l);
            }
            out.add_scaled(&term, &ScalarExpr::one());
        }
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn on_poly(&self, g: UGen, p: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.on_monomial(g, m), c);
        }
        out
    }

    /// `K_n^{±1}` eigenvalue on `det^λ` is `q^{±2λ}`; other `K_k` fix it.
    fn det_weight(&self, k: usize) -> i32 {
        if k == self.n() {
            2
        } else {
            0
        }
    }

    /// `minor({1..n-1}, {1..n-1})` (the empty minor is 1).
    pub fn corner_minor(&self) -> QPolynomial {
        let n = self.n();
        if n == 1 {
            return self.alg.one();
        }
        self.alg.leading_minor(n - 1)
    }

    /// Untwisted action of a generator on `poly * det^{-d}`.
    pub fn act_gen(&self, g: UGen, x: &LocalizedVector) -> Result<LocalizedVector> {
        let k = g.index();
        if k == 0 || k > self.rank() {
            return Err(Error::Index(format!("generator {} outside 1..{}", g, self.rank())));
        }
        let x = self.alg.normalize(x);
        let d = x.det_power;
        let lambda = -d;
        let n = self.n();
        let out = match g {
            UGen::K(k) => LocalizedVector::new(
                self.on_poly(g, &x.poly).scale(&ScalarExpr::q_pow((self.det_weight(k) as i64 * lambda) as i32)),
                d,
            ),
            UGen::Kinv(k) => LocalizedVector::new(
                self.on_poly(g, &x.poly).scale(&ScalarExpr::q_pow((-self.det_weight(k) as i64 * lambda) as i32)),
                d,
            ),
            UGen::E(k) if k == n && d != 0 => {
                // E(f det^λ) = E(f) det^λ + K(f) E(det^λ)
                let e_lambda = e_det_coeff(lambda);
                let kf = self.on_poly(UGen::K(n), &x.poly);
                let corr = self.alg.mul(&kf, &self.z(n, n)).scale(&e_lambda);
                LocalizedVector::new(self.on_poly(g, &x.poly).add(&corr), d)
            }
            UGen::F(k) if k == n && d != 0 => {
                // F(f det^λ) = F(f) K^{-1}(det^λ) + f F(det^λ)
                let f_lambda = f_det_coeff(lambda);
                let ff = self.on_poly(g, &x.poly).scale(&ScalarExpr::q_pow(-2 * lambda as i32));
                let first = self.alg.mul(&ff, &self.alg.det());
                let second = self.alg.mul(&x.poly, &self.corner_minor()).scale(&f_lambda);
                LocalizedVector::new(first.add(&second), d + 1)
            }
            _ => LocalizedVector::new(self.on_poly(g, &x.poly), d),
        };
        Ok(out)
    }
}

/// `E_n det^λ = e(λ) z_n^n det^λ` with `e(λ) = -q^{1/2}(1-q^{2λ})/(1-q^2)`.
pub fn e_det_coeff(lambda: i64) -> ScalarExpr {
    let num = ScalarExpr::one().sub(&ScalarExpr::q_pow(2 * lambda as i32));
    let den = ScalarExpr::one().sub(&ScalarExpr::q_pow(2));
    sqrt_q(1).neg().mul(&num).div(&den).expect("1 - q^2 is nonzero")
}

/// `F_n det^λ = f(λ) minor det^{λ-1}` with `f(λ) = q^{1/2}(1-q^{-2λ})/(1-q^{-2})`.
pub fn f_det_coeff(lambda: i64) -> ScalarExpr {
    let num = ScalarExpr::one().sub(&ScalarExpr::q_pow(-2 * lambda as i32));
    let den = ScalarExpr::one().sub(&ScalarExpr::q_pow(-2));
    sqrt_q(1).mul(&num).div(&den).expect("1 - q^-2 is nonzero")
}

/// A representation of `U_q sl_2n` on `C[Mat_n]_{q,det}`: untwisted, or `pi_{alpha,beta}`.
#[derive(Clone, Debug)]
pub struct Rep {
    base: Arc<Untwisted>,
    twist: Option<Twist>,
    c_e: ScalarExpr,
    c_f: ScalarExpr,
    k_ratio: ScalarExpr,
}

impl Rep {
    pub fn untwisted(base: Arc<Untwisted>) -> Rep {
        Rep {
            base,
            twist: None,
            c_e: ScalarExpr::zero(),
            c_f: ScalarExpr::zero(),
            k_ratio: ScalarExpr::one(),
        }
    }

    pub fn twisted(base: Arc<Untwisted>, twist: Twist) -> Rep {
        let qa = twist.qa.clone();
        let qb = twist.qb.clone();
        let qb_inv = qb.inv().expect("unit");
        let qa_inv = qa.inv().expect("unit");
        // c_E(β) = -q^{1/2}(1 - q^{-2β})/(1 - q^2)
        let c_e = sqrt_q(1)
            .neg()
            .mul(&ScalarExpr::one().sub(&qb_inv.mul(&qb_inv)))
            .div(&ScalarExpr::one().sub(&ScalarExpr::q_pow(2)))
            .expect("nonzero");
        // c_F = q^{1/2} q^β (q^α - q^{-α})/(1 - q^{-2})
        let c_f = sqrt_q(1)
            .mul(&qb)
            .mul(&qa.sub(&qa_inv))
            .div(&ScalarExpr::one().sub(&ScalarExpr::q_pow(-2)))
            .expect("nonzero");
        let k_ratio = qa.mul(&qb_inv);
        Rep { base, twist: Some(twist), c_e, c_f, k_ratio }
    }

    pub fn base(&self) -> &Arc<Untwisted> {
        &self.base
    }

    pub fn alg(&self) -> &Arc<QMatrix> {
        self.base.alg()
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn twist(&self) -> Option<&Twist> {
        self.twist.as_ref()
    }

    /// `alpha - beta` entering the weights (0 for the untwisted action).
    pub fn weight_shift(&self) -> Option<i64> {
        match &self.twist {
            None => Some(0),
            Some(t) => t.d,
        }
    }

    pub fn act_gen(&self, g: UGen, x: &LocalizedVector) -> Result<LocalizedVector> {
        let n = self.n();
        if self.twist.is_none() || g.index() != n {
            return self.base.act_gen(g, x);
        }
        let alg = self.alg();
        let x = alg.normalize(x);
        match g {
            UGen::K(_) => Ok(self.base.act_gen(g, &x)?.scale(&self.k_ratio)),
            UGen::Kinv(_) => Ok(self.base.act_gen(g, &x)?.scale(&self.k_ratio.inv()?)),
            UGen::E(_) => {
                let plain = self.base.act_gen(g, &x)?;
                let kx = self.base.act_gen(UGen::K(n), &x)?;
                let corr = LocalizedVector::new(
                    alg.mul(&kx.poly, &alg.gen(n, n)).scale(&self.c_e),
                    kx.det_power,
                );
                Ok(alg.loc_add(&plain, &corr))
            }
            UGen::F(_) => {
                let plain = self.base.act_gen(g, &x)?.scale(&self.k_ratio.inv()?);
                let corr = LocalizedVector::new(
                    alg.mul(&x.poly, &self.base.corner_minor()).scale(&self.c_f),
                    x.det_power + 1,
                );
                Ok(alg.loc_add(&plain, &corr))
            }
        }
    }

    /// Action of a word (letters applied right to left).
    pub fn act(&self, w: &UWord, x: &LocalizedVector) -> Result<LocalizedVector> {
        w.check_rank(2 * self.n() - 1)?;
        let alg = self.alg();
        let mut out = LocalizedVector::zero();
        for (word, c) in w.terms() {
            let mut v = x.clone();
            for &g in word.iter().rev() {
                if v.is_zero() {
                    break;
                }
                v = self.act_gen(g, &v)?;
            }
            if !v.is_zero() {
                out = alg.loc_add(&out, &v.scale(c));
            }
        }
        Ok(out)
    }

    /// Weight of a monomial vector: the exponents `w_k` with `K_k x = q^{w_k} x`.
    /// Requires an integral `alpha - beta`.
    pub fn weight(&self, m: &Monomial, det_power: i64) -> Result<Vec<i64>> {
        let d = self.weight_shift().ok_or_else(|| {
            Error::Unsupported("weights need integral alpha - beta".into())
        })?;
        let n = self.n();
        Ok((1..2 * n)
            .map(|k| {
                let mut w = self.base.mono_weight(k, m) as i64;
                if k == n {
                    w += d - 2 * det_power;
                }
                w
            })
            .collect())
    }

    /// Weight of a vector all of whose monomials share a weight.
    pub fn vector_weight(&self, x: &LocalizedVector) -> Result<Vec<i64>> {
        let mut w: Option<Vec<i64>> = None;
        for (m, _) in x.poly.terms() {
            let wm = self.weight(m, x.det_power)?;
            match &w {
                None => w = Some(wm),
                Some(w0) if *w0 != wm => {
                    return Err(Error::Unsupported("vector is not a weight vector".into()))
                }
                _ => {}
            }
        }
        w.ok_or_else(|| Error::Unsupported("zero vector has no weight".into()))
    }
}

/// `K_0 = K_1 K_2^2 ... K_n^n ... K_{2n-1}`.
pub fn k0_word(n: usize) -> UWord {
    let mut letters = Vec::new();
    for i in 1..2 * n {
        for _ in 0..i.min(2 * n - i) {
            letters.push(UGen::K(i));
        }
    }
    UWord::word(letters, ScalarExpr::one())
}
