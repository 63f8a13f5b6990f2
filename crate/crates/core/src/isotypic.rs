//! Decomposition of the graded pieces of `V` into simple `U_q k`-modules `V_k`.

use crate::action::Untwisted;
use crate::error::{Error, Result};
use crate::linalg::{coords_in_span, kernel, CoordMatrix, CoordVector, MonomialBasis};
use crate::qmatrix::{LocalizedVector, Monomial, QMatrix};
use crate::scalars::ScalarExpr;
use crate::uqsl::UGen;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature(pub Vec<i64>);

impl Signature {
    pub fn new(k: Vec<i64>) -> Signature {
        Signature(k)
    }

    pub fn zero(n: usize) -> Signature {
        Signature(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `k + e_j` (`delta = 1`) or `k - e_j` (`delta = -1`), `j` 1-based.
    pub fn shifted(&self, j: usize, delta: i64) -> Signature {
        let mut k = self.0.clone();
        k[j - 1] += delta;
        Signature(k)
    }

    pub fn parse(src: &str) -> Result<Signature> {
        let t = src.trim().trim_start_matches('(').trim_end_matches(')');
        let k = t
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad signature '{}'", src))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Signature(k))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dominant signatures with `sum k_i = j` and `k_n >= -k`.
pub fn signatures(n: usize, j: i64, k: i64) -> Vec<Signature> {
    let mut out = Vec::new();
    let top = j + (n as i64 - 1) * k;
    fn rec(n: usize, j: i64, k: i64, top: i64, cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        if cur.len() == n {
            if cur.iter().sum::<i64>() == j && *cur.last().unwrap() >= -k {
                out.push(Signature(cur.clone()));
            }
            return;
        }
        let hi = cur.last().copied().unwrap_or(top);
        for x in (-k..=hi).rev() {
            cur.push(x);
            rec(n, j, k, top, cur, out);
            cur.pop();
        }
    }
    if n > 0 {
        rec(n, j, k, top, &mut Vec::new(), &mut out);
    }
    out
}

/// Classical Weyl dimension of the `sl_n` module with highest weight `k_1 - k_2, ..., k_{n-1} - k_n`.
pub fn weyl_dimension(k: &Signature) -> usize {
    let n = k.n();
    let mut num = 1i64;
    let mut den = 1i64;
    for a in 0..n {
        for b in a + 1..n {
            num *= k.0[a] - k.0[b] + (b - a) as i64;
            den *= (b - a) as i64;
        }
    }
    (num / den) as usize
}

/// `v^h_k = (z^{^1})^{k_1-k_2} ... (z^{^n})^{k_n}`.
pub fn vh_vector(alg: &QMatrix, k: &Signature) -> Result<LocalizedVector> {
    let n = alg.n();
    if k.n() != n {
        return Err(Error::Usage(format!("signature {} has the wrong length for n={}", k, n)));
    }
    if !k.is_dominant() {
        return Err(Error::Usage(format!("signature {} is not dominant", k)));
    }
    let mut p = alg.one();
    for i in 1..n {
        let m = alg.leading_minor(i);
        for _ in 0..k.0[i - 1] - k.0[i] {
            p = alg.mul(&p, &m);
        }
    }
    let kn = k.0[n - 1];
    if kn >= 0 {
        p = alg.mul(&p, &alg.det_pow(kn as u32));
        Ok(LocalizedVector::new(p, 0))
    } else {
        Ok(LocalizedVector::new(p, -kn))
    }
}

/// Weight of `v^h_k` with `d = alpha - beta` added in slot `n`.
pub fn highest_weight(k: &Signature, d: i64) -> Vec<i64> {
    let n = k.n();
    let mut w = Vec::with_capacity(2 * n - 1);
    for i in 1..n {
        w.push(k.0[i - 1] - k.0[i]);
    }
    w.push(2 * k.0[n - 1] + d);
    for i in (1..n).rev() {
        w.push(k.0[i - 1] - k.0[i]);
    }
    w
}

fn untwisted_weight(base: &Untwisted, m: &Monomial, det_power: i64) -> Vec<i64> {
    let n = base.n();
    (1..2 * n)
        .map(|i| base.mono_weight(i, m) as i64 - if i == n { 2 * det_power } else { 0 })
        .collect()
}

#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    pub signature: Signature,
    /// BFS order over lowering words; entry 0 is `v^h`.
    pub basis: Vec<LocalizedVector>,
    pub coords: Vec<CoordVector>,
    /// Untwisted weights of the basis vectors.
    pub weights: Vec<Vec<i64>>,
}

impl IsotypicComponent {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn highest(&self) -> &LocalizedVector {
        &self.basis[0]
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub grade: i64,
    pub det_power: i64,
    pub basis: MonomialBasis,
    pub components: Vec<IsotypicComponent>,
    /// Monomial indices grouped by weight.
    weight_spaces: BTreeMap<Vec<i64>, Vec<usize>>,
}

#[derive(Serialize)]
pub struct ComponentSummary {
    pub signature: Vec<i64>,
    pub dimension: usize,
    pub highest_weight: Vec<i64>,
}

impl Decomposition {
    pub fn component(&self, k: &Signature) -> Option<&IsotypicComponent> {
        self.components.iter().find(|c| &c.signature == k)
    }

    pub fn signatures(&self) -> Vec<Signature> {
        self.components.iter().map(|c| c.signature.clone()).collect()
    }

    pub fn summary(&self, d: i64) -> Vec<ComponentSummary> {
        self.components
            .iter()
            .map(|c| ComponentSummary {
                signature: c.signature.0.clone(),
                dimension: c.dimension(),
                highest_weight: highest_weight(&c.signature, d),
            })
            .collect()
    }

    /// Components of `x` in every `V_k` of this piece, keyed by signature.
    pub fn split(&self, alg: &QMatrix, x: &LocalizedVector) -> Result<Vec<(Signature, LocalizedVector)>> {
        let v = self.basis.coords(alg, x)?;
        let mut parts: Vec<CoordVector> = vec![vec![ScalarExpr::zero(); self.basis.len()]; self.components.len()];
        for idx in self.weight_spaces.values() {
            if idx.iter().all(|&i| v[i].is_zero()) {
                continue;
            }
            let restrict = |w: &CoordVector| -> CoordVector { idx.iter().map(|&i| w[i].clone()).collect() };
            let mut owners = Vec::new();
            let mut local = Vec::new();
            for (ci, c) in self.components.iter().enumerate() {
                for w in &c.coords {
                    if idx.iter().any(|&i| !w[i].is_zero()) {
                        owners.push(ci);
                        local.push(restrict(w));
                    }
                }
            }
            let sol = coords_in_span(&restrict(&v), &local)?
                .ok_or_else(|| Error::Verification("vector outside the decomposed piece".into()))?;
            for ((ci, w), a) in owners.iter().zip(&local).zip(&sol) {
                if a.is_zero() {
                    continue;
                }
                for (pos, &i) in idx.iter().enumerate() {
                    if !w[pos].is_zero() {
                        parts[*ci][i] = parts[*ci][i].add(&a.mul(&w[pos]));
                    }
                }
            }
        }
        Ok(self
            .components
            .iter()
            .zip(parts)
            .map(|(c, p)| (c.signature.clone(), self.basis.vector(&p)))
            .collect())
    }

    /// Direct-sum projection of `x` onto `V_target`.
    pub fn project(&self, alg: &QMatrix, x: &LocalizedVector, target: &Signature) -> Result<LocalizedVector> {
        for (k, part) in self.split(alg, x)? {
            if &k == target {
                return Ok(part);
            }
        }
        Ok(LocalizedVector::zero())
    }
}

fn solve_signature(n: usize, grade: i64, w: &[i64]) -> Option<Signature> {
    let diffs: Vec<i64> = w[..n - 1].to_vec();
    if (1..n).any(|i| w[2 * n - 1 - i] != diffs[i - 1]) {
        return None;
    }
    let s: i64 = diffs.iter().enumerate().map(|(i, a)| (i as i64 + 1) * a).sum();
    if (grade - s) % n as i64 != 0 {
        return None;
    }
    let kn = (grade - s) / n as i64;
    let mut k = vec![kn; n];
    for i in (0..n - 1).rev() {
        k[i] = k[i + 1] + diffs[i];
    }
    Some(Signature(k))
}

/// Decomposes the grade-`j` piece of `V^{(k)} = C[Mat_n]_q det^{-k}`.
pub fn decompose(base: &Untwisted, j: i64, k: i64) -> Result<Decomposition> {
    let alg = base.alg();
    let n = alg.n();
    let deg = j + n as i64 * k;
    if deg < 0 || k < 0 {
        return Err(Error::Usage(format!("empty piece: grade {} det power {}", j, k)));
    }
    let basis = MonomialBasis::new(alg, deg as usize, k);
    let mut weight_spaces: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, m) in basis.monomials.iter().enumerate() {
        weight_spaces.entry(untwisted_weight(base, m, k)).or_default().push(i);
    }
    let raising: Vec<usize> = (1..2 * n).filter(|&i| i != n).collect();
    let coords_of = |x: &LocalizedVector| basis.coords(alg, x);

    // highest vectors
    let mut seeds: Vec<Signature> = Vec::new();
    for (w, idx) in &weight_spaces {
        if raising.iter().any(|&i| w[i - 1] < 0) {
            continue;
        }
        let mut rows: Vec<Vec<ScalarExpr>> = Vec::new();
        let images: Vec<Vec<CoordVector>> = idx
            .iter()
            .map(|&c| {
                let x = basis.vector(&unit(basis.len(), c));
                raising
                    .iter()
                    .map(|&i| base.act_gen(UGen::E(i), &x).and_then(|y| coords_of(&y)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for (ri, _) in raising.iter().enumerate() {
            for t in 0..basis.len() {
                let row: Vec<ScalarExpr> = images.iter().map(|im| im[ri][t].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let ker = if rows.is_empty() {
            (0..idx.len()).map(|c| unit(idx.len(), c)).collect()
        } else {
            kernel(&CoordMatrix::from_rows(rows))
        };
        if ker.is_empty() {
            continue;
        }
        if ker.len() > 1 {
            return Err(Error::Verification(format!("highest weight {:?} has multiplicity {}", w, ker.len())));
        }
        let sig = solve_signature(n, j, w)
            .filter(|s| s.is_dominant() && w[n - 1] == 2 * s.0[n - 1])
            .ok_or_else(|| Error::Verification(format!("weight {:?} is not a highest weight of the piece", w)))?;
        // the kernel vector must be proportional to v^h
        let mut full = vec![ScalarExpr::zero(); basis.len()];
        for (pos, &i) in idx.iter().enumerate() {
            full[i] = ker[0][pos].clone();
        }
        let vh = coords_of(&vh_vector(alg, &sig)?)?;
        if coords_in_span(&vh, &[full])?.is_none() {
            return Err(Error::Verification(format!("highest vector of {} is not v^h", sig)));
        }
        seeds.push(sig);
    }

    let mut components = Vec::new();
    for sig in seeds {
        let vh = vh_vector(alg, &sig)?;
        let vh = alg.raise_det_power(&vh, k);
        let mut comp = IsotypicComponent {
            signature: sig,
            basis: vec![],
            coords: vec![],
            weights: vec![],
        };
        let mut by_weight: HashMap<Vec<i64>, Vec<CoordVector>> = HashMap::new();
        let mut queue = VecDeque::new();
        queue.push_back(vh);
        while let Some(x) = queue.pop_front() {
            let c = coords_of(&x)?;
            let Some(w) = weight_of(base, &basis, &c, k) else { continue };
            let idx = &weight_spaces[&w];
            let local: CoordVector = idx.iter().map(|&i| c[i].clone()).collect();
            let known = by_weight.entry(w.clone()).or_default();
            if !known.is_empty() && coords_in_span(&local, known)?.is_some() {
                continue;
            }
            known.push(local);
            comp.basis.push(x.clone());
            comp.coords.push(c);
            comp.weights.push(w);
            for &i in &raising {
                let y = base.act_gen(UGen::F(i), &x)?;
                if !y.is_zero() {
                    queue.push_back(alg.raise_det_power(&y, k.max(y.det_power)));
                }
            }
        }
        components.push(comp);
    }

    let total: usize = components.iter().map(|c| c.dimension()).sum();
    if total != basis.len() {
        return Err(Error::Verification(format!(
            "components span {} of {} dimensions",
            total,
            basis.len()
        )));
    }
    let dec = Decomposition { grade: j, det_power: k, basis, components, weight_spaces };
    // independence across components, weight space by weight space
    for (w, idx) in &dec.weight_spaces {
        let cols: Vec<CoordVector> = dec
            .components
            .iter()
            .flat_map(|c| c.coords.iter().zip(&c.weights).filter(|(_, cw)| *cw == w).map(|(v, _)| v))
            .map(|v| idx.iter().map(|&i| v[i].clone()).collect())
            .collect();
        if CoordMatrix::from_columns(&cols, idx.len()).rank() != idx.len() {
            return Err(Error::Verification(format!("components overlap in weight {:?}", w)));
        }
    }
    Ok(dec)
}

fn unit(len: usize, i: usize) -> CoordVector {
    let mut v = vec![ScalarExpr::zero(); len];
    v[i] = ScalarExpr::one();
    v
}

fn weight_of(base: &Untwisted, basis: &MonomialBasis, c: &CoordVector, k: i64) -> Option<Vec<i64>> {
    let i = c.iter().position(|x| !x.is_zero())?;
    Some(untwisted_weight(base, &basis.monomials[i], k))
}

/// Memoized decompositions keyed by `(grade, det power)`.
#[derive(Debug)]
pub struct Decomposer {
    base: Arc<Untwisted>,
    cache: Mutex<HashMap<(i64, i64), Arc<Decomposition>>>,
}

impl Decomposer {
    pub fn new(base: Arc<Untwisted>) -> Decomposer {
        Decomposer { base, cache: Mutex::new(HashMap::new()) }
    }

    pub fn base(&self) -> &Arc<Untwisted> {
        &self.base
    }

    pub fn piece(&self, j: i64, k: i64) -> Result<Arc<Decomposition>> {
        if let Some(d) = self.cache.lock().unwrap().get(&(j, k)) {
            return Ok(d.clone());
        }
        let d = Arc::new(decompose(&self.base, j, k)?);
        self.cache.lock().unwrap().insert((j, k), d.clone());
        Ok(d)
    }

    /// The piece holding a homogeneous vector, at the smallest usable det power.
    pub fn piece_of(&self, x: &LocalizedVector) -> Result<Arc<Decomposition>> {
        let alg = self.base.alg();
        let j = alg
            .grade(x)
            .ok_or_else(|| Error::Usage("vector is not homogeneous".into()))?;
        let n = alg.n() as i64;
        let k = x.det_power.max(0).max((-j + n - 1).div_euclid(n));
        self.piece(j, k)
    }

    /// Components of an arbitrary window vector, grouped by signature.
    pub fn split(&self, x: &LocalizedVector) -> Result<Vec<(Signature, LocalizedVector)>> {
        let alg = self.base.alg();
        let mut by_grade: BTreeMap<i64, LocalizedVector> = BTreeMap::new();
        let n = alg.n() as i64;
        for (m, c) in x.poly.terms() {
            let g = m.degree() as i64 - n * x.det_power;
            let e = by_grade.entry(g).or_insert_with(|| LocalizedVector::new(Default::default(), x.det_power));
            e.poly.add_term(m.clone(), c);
        }
        let mut out = Vec::new();
        for (_, y) in by_grade {
            let y = alg.normalize(&y);
            let dec = self.piece_of(&y)?;
            for (k, p) in dec.split(alg, &y)? {
                if !p.is_zero() {
                    out.push((k, p));
                }
            }
        }
        Ok(out)
    }

    pub fn project(&self, x: &LocalizedVector, target: &Signature) -> Result<LocalizedVector> {
        let alg = self.base.alg();
        let mut out = LocalizedVector::zero();
        for (k, p) in self.split(x)? {
            if &k == target {
                out = alg.loc_add(&out, &p);
            }
        }
        Ok(out)
    }
}
