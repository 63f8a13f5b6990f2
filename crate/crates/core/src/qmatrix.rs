//! The quantum matrix algebra `C[Mat_n]_q` in PBW normal form, q-minors and the
//! localization at the quantum determinant.

use crate::error::{Error, Result};
use crate::scalars::ScalarExpr;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// A generator `z_a^b` (row `a`, column `b`, both 1-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Gen {
    pub a: usize,
    pub b: usize,
}

impl Gen {
    pub fn new(a: usize, b: usize) -> Gen {
        Gen { a, b }
    }
}

/// Exponent vector over the generators in row-major order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n * n])
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn max_letter(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    fn with(&self, idx: usize, delta: i32) -> Monomial {
        let mut m = self.0.clone();
        m[idx] = (m[idx] as i32 + delta) as u16;
        Monomial(m)
    }

    /// Letters in normal order (each generator index repeated by its exponent).
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                out.push(i);
            }
        }
        out
    }
}

/// A linear combination of normal monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPolynomial {
    terms: BTreeMap<Monomial, ScalarExpr>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: ScalarExpr) -> Self {
        QPolynomial::monomial(Monomial::one(n), c)
    }

    pub fn monomial(m: Monomial, c: ScalarExpr) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        QPolynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarExpr)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> ScalarExpr {
        self.terms.get(m).cloned().unwrap_or_else(ScalarExpr::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &ScalarExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = e.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &QPolynomial, c: &ScalarExpr) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &o.terms {
            let t = if c.is_one() { a.clone() } else { a.mul(c) };
            self.add_term(m.clone(), &t);
        }
    }

    pub fn add(&self, o: &QPolynomial) -> QPolynomial {
        let mut r = self.clone();
        r.add_scaled(o, &ScalarExpr::one());
        r
    }

    pub fn sub(&self, o: &QPolynomial) -> QPolynomial {
        let mut r = self.clone();
        r.add_scaled(o, &ScalarExpr::int(-1));
        r
    }

    pub fn scale(&self, c: &ScalarExpr) -> QPolynomial {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    /// Maps every coefficient (used for specialization and twist resolution).
    pub fn map_coeffs(&self, f: impl Fn(&ScalarExpr) -> Result<ScalarExpr>) -> Result<QPolynomial> {
        let mut out = QPolynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Degree when all terms have the same z-degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }
}

#[derive(Default)]
struct Caches {
    mul_gen: HashMap<(Monomial, usize), QPolynomial>,
    minors: HashMap<(Vec<usize>, Vec<usize>), QPolynomial>,
}

/// `C[Mat_n]_q` for a fixed `n`, with memoized straightening.
pub struct QMatrix {
    n: usize,
    caches: Mutex<Caches>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix(n={})", self.n)
    }
}

impl QMatrix {
    pub fn new(n: usize) -> Arc<QMatrix> {
        assert!(n >= 1, "n must be positive");
        Arc::new(QMatrix { n, caches: Mutex::new(Caches::default()) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gen_index(&self, g: Gen) -> usize {
        (g.a - 1) * self.n + (g.b - 1)
    }

    pub fn gen_of(&self, idx: usize) -> Gen {
        Gen { a: idx / self.n + 1, b: idx % self.n + 1 }
    }

    pub fn check_gen(&self, g: Gen) -> Result<()> {
        if g.a == 0 || g.b == 0 || g.a > self.n || g.b > self.n {
            return Err(Error::Index(format!("z[{},{}] outside 1..{}", g.a, g.b, self.n)));
        }
        Ok(())
    }

    pub fn one(&self) -> QPolynomial {
        QPolynomial::constant(self.n, ScalarExpr::one())
    }

    pub fn gen(&self, a: usize, b: usize) -> QPolynomial {
        let idx = self.gen_index(Gen::new(a, b));
        QPolynomial::monomial(Monomial::one(self.n).with(idx, 1), ScalarExpr::one())
    }

    pub fn monomial_of(&self, gens: &[(Gen, u16)]) -> Monomial {
        let mut m = Monomial::one(self.n);
        for (g, e) in gens {
            m.0[self.gen_index(*g)] += e;
        }
        m
    }

    /// Normal form of `m * z_g`.
    pub fn mono_mul_gen(&self, m: &Monomial, g: usize) -> QPolynomial {
        match m.max_letter() {
            None => return QPolynomial::monomial(m.with(g, 1), ScalarExpr::one()),
            Some(x) if x <= g => return QPolynomial::monomial(m.with(g, 1), ScalarExpr::one()),
            _ => {}
        }
        let key = (m.clone(), g);
        if let Some(p) = self.caches.lock().unwrap().mul_gen.get(&key) {
            return p.clone();
        }
        let x = m.max_letter().unwrap();
        let rest = m.with(x, -1);
        let gx = self.gen_of(x);
        let gg = self.gen_of(g);
        let mut out = QPolynomial::zero();
        for (c, y1, y2) in swap_rule(gx, gg) {
            let left = self.mono_mul_gen(&rest, self.gen_index(y1));
            let prod = self.poly_mul_gen(&left, self.gen_index(y2));
            out.add_scaled(&prod, &c);
        }
        self.caches.lock().unwrap().mul_gen.insert(key, out.clone());
        out
    }

    pub fn poly_mul_gen(&self, p: &QPolynomial, g: usize) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.mono_mul_gen(m, g), c);
        }
        out
    }

    pub fn mono_mul(&self, a: &Monomial, b: &Monomial) -> QPolynomial {
        let mut acc = QPolynomial::monomial(a.clone(), ScalarExpr::one());
        for g in b.letters() {
            acc = self.poly_mul_gen(&acc, g);
        }
        acc
    }

    pub fn mul(&self, p: &QPolynomial, q: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (mb, cb) in q.terms() {
            let mut part = p.clone();
            for g in mb.letters() {
                part = self.poly_mul_gen(&part, g);
            }
            out.add_scaled(&part, cb);
        }
        out
    }

    /// Normal form of an arbitrary word in the generators.
    pub fn normal_form(&self, word: &[Gen]) -> Result<QPolynomial> {
        let mut acc = self.one();
        for g in word {
            self.check_gen(*g)?;
            acc = self.poly_mul_gen(&acc, self.gen_index(*g));
        }
        Ok(acc)
    }

    /// The q-minor `sum_s (-q)^{l(s)} z_{a_1}^{b_s(1)} ... z_{a_k}^{b_s(k)}`.
    pub fn q_minor(&self, rows: &[usize], cols: &[usize]) -> Result<QPolynomial> {
        if rows.len() != cols.len() {
            return Err(Error::Usage("minor needs as many rows as columns".into()));
        }
        for &r in rows.iter().chain(cols.iter()) {
            if r == 0 || r > self.n {
                return Err(Error::Index(format!("minor index {} outside 1..{}", r, self.n)));
            }
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(p) = self.caches.lock().unwrap().minors.get(&key) {
            return Ok(p.clone());
        }
        let k = rows.len();
        let mut out = QPolynomial::zero();
        for perm in permutations(k) {
            let len = inversions(&perm);
            let coeff = ScalarExpr::q_pow(len as i32).scale(&crate::scalars::Gauss::int(if len.is_multiple_of(2) {
                1
            } else {
                -1
            }));
            let word: Vec<Gen> = (0..k).map(|i| Gen::new(rows[i], cols[perm[i]])).collect();
            out.add_scaled(&self.normal_form(&word)?, &coeff);
        }
        self.caches.lock().unwrap().minors.insert(key, out.clone());
        Ok(out)
    }

    pub fn det(&self) -> QPolynomial {
        let all: Vec<usize> = (1..=self.n).collect();
        self.q_minor(&all, &all).expect("valid minor")
    }

    /// Leading principal minor `z^{wedge k}` (rows and columns `1..k`).
    pub fn leading_minor(&self, k: usize) -> QPolynomial {
        let idx: Vec<usize> = (1..=k).collect();
        self.q_minor(&idx, &idx).expect("valid minor")
    }

    pub fn det_pow(&self, k: u32) -> QPolynomial {
        let d = self.det();
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, &d);
        }
        acc
    }

    /// All normal monomials of the given degree, in increasing order.
    pub fn monomials_of_degree(&self, deg: usize) -> Vec<Monomial> {
        let n2 = self.n * self.n;
        let mut out = Vec::new();
        let mut cur = vec![0u16; n2];
        fn rec(i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left as u16;
                out.push(Monomial(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, deg, &mut cur, &mut out);
        out.sort();
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = self.gen_of(i);
            if e == 1 {
                parts.push(format!("z[{},{}]", g.a, g.b));
            } else {
                parts.push(format!("z[{},{}]^{}", g.a, g.b, e));
            }
        }
        parts.join("*")
    }
}

/// Rewriting of `x * g` for generators `x > g` into ordered words.
fn swap_rule(x: Gen, g: Gen) -> Vec<(ScalarExpr, Gen, Gen)> {
    let qinv = ScalarExpr::q_pow(-1);
    if x.a == g.a || x.b == g.b {
        vec![(qinv, g, x)]
    } else if g.b > x.b {
        vec![(ScalarExpr::one(), g, x)]
    } else {
        let c = ScalarExpr::q_pow(1).sub(&qinv).neg();
        vec![(ScalarExpr::one(), g, x), (c, Gen::new(g.a, x.b), Gen::new(x.a, g.b))]
    }
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// Dimension of the degree-`j` piece of `C[Mat_n]_q`.
pub fn dim_graded(n: usize, j: usize) -> usize {
    binomial(n * n + j - 1, j)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// `poly * det^{-det_power}` in the localization `C[Mat_n]_{q,det}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedVector {
    pub poly: QPolynomial,
    pub det_power: i64,
}

impl LocalizedVector {
    pub fn new(poly: QPolynomial, det_power: i64) -> Self {
        LocalizedVector { poly, det_power }
    }

    pub fn zero() -> Self {
        LocalizedVector { poly: QPolynomial::zero(), det_power: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &ScalarExpr) -> Self {
        LocalizedVector { poly: self.poly.scale(c), det_power: self.det_power }
    }
}

impl QMatrix {
    /// Rewrites `x` with a larger det power `d` (multiplying the polynomial by `det^{d - x.det_power}`).
    pub fn raise_det_power(&self, x: &LocalizedVector, d: i64) -> LocalizedVector {
        assert!(d >= x.det_power);
        let k = (d - x.det_power) as u32;
        if k == 0 {
            return x.clone();
        }
        // det is central, so the side does not matter
        LocalizedVector { poly: self.mul(&x.poly, &self.det_pow(k)), det_power: d }
    }

    /// Writes both vectors over a common det power; negative powers are absorbed.
    pub fn common(&self, x: &LocalizedVector, y: &LocalizedVector) -> (LocalizedVector, LocalizedVector) {
        let d = x.det_power.max(y.det_power);
        (self.raise_det_power(x, d), self.raise_det_power(y, d))
    }

    /// Equality in the localization, by cross-multiplication with det powers.
    pub fn loc_equal(&self, x: &LocalizedVector, y: &LocalizedVector) -> bool {
        let (a, b) = self.common(x, y);
        a.poly == b.poly
    }

    pub fn loc_add(&self, x: &LocalizedVector, y: &LocalizedVector) -> LocalizedVector {
        let (a, b) = self.common(x, y);
        LocalizedVector { poly: a.poly.add(&b.poly), det_power: a.det_power }
    }

    pub fn loc_sub(&self, x: &LocalizedVector, y: &LocalizedVector) -> LocalizedVector {
        let (a, b) = self.common(x, y);
        LocalizedVector { poly: a.poly.sub(&b.poly), det_power: a.det_power }
    }

    pub fn loc_mul(&self, x: &LocalizedVector, y: &LocalizedVector) -> LocalizedVector {
        LocalizedVector { poly: self.mul(&x.poly, &y.poly), det_power: x.det_power + y.det_power }
    }

    /// Normalizes a vector with negative det power into a plain polynomial.
    pub fn normalize(&self, x: &LocalizedVector) -> LocalizedVector {
        if x.det_power < 0 {
            self.raise_det_power(x, 0)
        } else {
            x.clone()
        }
    }

    /// `z-degree - n * det_power` when homogeneous.
    pub fn grade(&self, x: &LocalizedVector) -> Option<i64> {
        x.poly.homogeneous_degree().map(|d| d as i64 - self.n as i64 * x.det_power)
    }

    /// Basis of the window: normal monomials of degree `<= max_degree` times
    /// `det^{-d}` for `0 <= d <= max_det`.
    pub fn window(&self, max_degree: usize, max_det: i64) -> Vec<LocalizedVector> {
        let mut out = Vec::new();
        for d in 0..=max_det {
            for deg in 0..=max_degree {
                for m in self.monomials_of_degree(deg) {
                    out.push(LocalizedVector::new(QPolynomial::monomial(m, ScalarExpr::one()), d));
                }
            }
        }
        out
    }

    pub fn format_poly(&self, p: &QPolynomial) -> String {
        self.format_loc(&LocalizedVector::new(p.clone(), 0))
    }

    /// Text form accepted by the polynomial parser.
    pub fn format_loc(&self, x: &LocalizedVector) -> String {
        if x.poly.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in x.poly.terms() {
            let mut factors = Vec::new();
            if !c.is_one() {
                factors.push(format!("({})", c));
            }
            let mono = self.format_monomial(m);
            if !mono.is_empty() {
                factors.push(mono);
            }
            if x.det_power != 0 {
                factors.push(format!("det^{}", -x.det_power));
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}
