use super::gauss::Gauss;
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub const NVARS: usize = 3;
pub const VAR_NAMES: [&str; NVARS] = ["s", "u", "v"];

/// Exponent vector over `(s, u, v)`, ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [i32; NVARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; NVARS])
    }

    pub fn var(i: usize, e: i32) -> Self {
        let mut m = [0; NVARS];
        m[i] = e;
        Mono(m)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Mono(m)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a -= b;
        }
        Mono(m)
    }

    pub fn inv(&self) -> Mono {
        Mono([-self.0[0], -self.0[1], -self.0[2]])
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial in `s, u, v` with Gaussian-rational coefficients.
/// Terms are kept sorted ascending by monomial with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LPoly {
    terms: Vec<(Mono, Gauss)>,
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly { terms: Vec::new() }
    }

    pub fn constant(c: Gauss) -> Self {
        if c.is_zero() {
            LPoly::zero()
        } else {
            LPoly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn one() -> Self {
        LPoly::constant(Gauss::one())
    }

    pub fn monomial(m: Mono, c: Gauss) -> Self {
        if c.is_zero() {
            LPoly::zero()
        } else {
            LPoly { terms: vec![(m, c)] }
        }
    }

    pub fn from_map(map: BTreeMap<Mono, Gauss>) -> Self {
        LPoly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Mono, Gauss)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// A single term: a unit of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<&(Mono, Gauss)> {
        self.terms.last()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[i] != 0)
    }

    /// Componentwise minimum of exponents (the largest monomial dividing every term).
    pub fn min_mono(&self) -> Mono {
        let mut m = [i32::MAX; NVARS];
        for (mm, _) in &self.terms {
            for k in 0..NVARS {
                m[k] = m[k].min(mm.0[k]);
            }
        }
        if self.terms.is_empty() {
            Mono::one()
        } else {
            Mono(m)
        }
    }

    pub fn max_exp(&self, var: usize) -> i32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Gauss) -> LPoly {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Multiplication by a monomial keeps the order.
    pub fn shift(&self, m: &Mono) -> LPoly {
        LPoly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn neg(&self) -> LPoly {
        LPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    fn merge(&self, o: &LPoly, negate: bool) -> LPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*mb, if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &o.terms[j..] {
            out.push((*m, if negate { -c } else { c.clone() }));
        }
        LPoly { terms: out }
    }

    pub fn add(&self, o: &LPoly) -> LPoly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &LPoly) -> LPoly {
        self.merge(o, true)
    }

    pub fn mul(&self, o: &LPoly) -> LPoly {
        if self.is_zero() || o.is_zero() {
            return LPoly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.shift(m).scale(c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.shift(m).scale(c);
        }
        let mut acc: BTreeMap<Mono, Gauss> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let p = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|e| *e += &p)
                    .or_insert(p);
            }
        }
        LPoly::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> LPoly {
        let mut acc = LPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division in the polynomial ring; both operands must have
    /// non-negative exponents. Returns `None` when `d` does not divide `self`.
    pub fn div_exact_poly(&self, d: &LPoly) -> Option<LPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            if !self.terms.iter().all(|(a, _)| m.divides(a)) {
                return None;
            }
            return Some(self.shift(&m.inv()).scale(&c.inv()));
        }
        let (lm, lc) = d.leading().unwrap().clone();
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot: BTreeMap<Mono, Gauss> = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&lm);
            let qc = &rc * &lc_inv;
            rem = rem.sub(&d.shift(&qm).scale(&qc));
            quot.insert(qm, qc);
        }
        Some(LPoly::from_map(quot))
    }

    /// Exact division in the Laurent ring.
    pub fn div_exact(&self, d: &LPoly) -> Option<LPoly> {
        let ms = self.min_mono();
        let md = d.min_mono();
        let a = self.shift(&ms.inv());
        let b = d.shift(&md.inv());
        a.div_exact_poly(&b).map(|q| q.shift(&ms.div(&md)))
    }

    /// Splits into coefficients of powers of `var` (exponents must be non-negative).
    pub fn to_univariate(&self, var: usize) -> Vec<LPoly> {
        let deg = self.max_exp(var).max(0) as usize;
        let mut maps: Vec<BTreeMap<Mono, Gauss>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var];
            debug_assert!(e >= 0);
            let mut mm = *m;
            mm.0[var] = 0;
            maps[e as usize].insert(mm, c.clone());
        }
        maps.into_iter().map(LPoly::from_map).collect()
    }

    pub fn from_univariate(coeffs: &[LPoly], var: usize) -> LPoly {
        let mut acc: BTreeMap<Mono, Gauss> = BTreeMap::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut mm = *m;
                mm.0[var] += e as i32;
                acc.insert(mm, a.clone());
            }
        }
        LPoly::from_map(acc)
    }

    /// Substitute each variable by a Laurent polynomial (variables with `None` are kept).
    pub fn substitute(&self, subs: &[Option<LPoly>; NVARS]) -> Option<LPoly> {
        let mut out = LPoly::zero();
        for (m, c) in &self.terms {
            let mut term = LPoly::constant(c.clone());
            let mut keep = Mono::one();
            for k in 0..NVARS {
                let e = m.0[k];
                match &subs[k] {
                    None => keep.0[k] = e,
                    Some(p) => {
                        if e >= 0 {
                            term = term.mul(&p.pow(e as u32));
                        } else {
                            if !p.is_unit() {
                                return None;
                            }
                            let (pm, pc) = &p.terms[0];
                            let inv = LPoly::monomial(pm.inv(), pc.inv());
                            term = term.mul(&inv.pow((-e) as u32));
                        }
                    }
                }
            }
            out = out.add(&term.shift(&keep));
        }
        Some(out)
    }

    /// Complex conjugation of coefficients.
    pub fn conj(&self) -> LPoly {
        LPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }
}
