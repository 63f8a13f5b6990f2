//! Dense exact linear algebra over the `ScalarExpr` field.

use crate::error::{Error, Result};
use crate::qmatrix::{LocalizedVector, Monomial, QMatrix, QPolynomial};
use crate::scalars::ScalarExpr;
use std::collections::HashMap;

pub type CoordVector = Vec<ScalarExpr>;

#[derive(Clone, Debug, PartialEq)]
pub struct CoordMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<ScalarExpr>>,
}

impl CoordMatrix {
    pub fn zeros(rows: usize, cols: usize) -> CoordMatrix {
        CoordMatrix { rows, cols, data: vec![vec![ScalarExpr::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> CoordMatrix {
        let mut m = CoordMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = ScalarExpr::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<ScalarExpr>>) -> CoordMatrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        CoordMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[CoordVector], rows: usize) -> CoordMatrix {
        let mut m = CoordMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[ScalarExpr]) -> CoordVector {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = ScalarExpr::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Pivots are the first nonzero entry in column order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else { continue };
            self.data.swap(r, p);
            let inv = self.data[r][c].inv().expect("nonzero pivot");
            for x in self.data[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i == r || self.data[i][c].is_zero() {
                    continue;
                }
                let f = self.data[i][c].clone();
                for (x, y) in self.data[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Kernel basis, one vector per free column with a 1 in that column.
pub fn kernel(m: &CoordMatrix) -> Vec<CoordVector> {
    let mut a = m.clone();
    let pivots = a.rref();
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![ScalarExpr::zero(); m.cols];
        v[free] = ScalarExpr::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a.data[r][free].neg();
        }
        out.push(v);
    }
    out
}

/// Solves `sum x_i basis_i = v`. `Ok(None)` means `v` is not in the span.
pub fn coords_in_span(v: &[ScalarExpr], basis: &[CoordVector]) -> Result<Option<CoordVector>> {
    let rows = v.len();
    let k = basis.len();
    let mut aug = CoordMatrix::zeros(rows, k + 1);
    for i in 0..rows {
        for (j, b) in basis.iter().enumerate() {
            if b.len() != rows {
                return Err(Error::Index("basis vector length mismatch".into()));
            }
            aug.data[i][j] = b[i].clone();
        }
        aug.data[i][k] = v[i].clone();
    }
    let pivots = aug.rref();
    if pivots.iter().filter(|&&c| c < k).count() < k {
        return Err(Error::Verification("basis vectors are linearly dependent".into()));
    }
    if pivots.contains(&k) {
        return Ok(None);
    }
    Ok(Some((0..k).map(|r| aug.data[r][k].clone()).collect()))
}

/// Coordinates on the monomials of one degree at a fixed det power.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub det_power: i64,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(alg: &QMatrix, degree: usize, det_power: i64) -> MonomialBasis {
        MonomialBasis::from_monomials(alg.monomials_of_degree(degree), det_power)
    }

    pub fn from_monomials(monomials: Vec<Monomial>, det_power: i64) -> MonomialBasis {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { det_power, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn coords(&self, alg: &QMatrix, x: &LocalizedVector) -> Result<CoordVector> {
        if x.poly.is_zero() {
            return Ok(vec![ScalarExpr::zero(); self.len()]);
        }
        if x.det_power > self.det_power {
            return Err(Error::Index("vector needs a larger det power than the window".into()));
        }
        let y = alg.raise_det_power(x, self.det_power);
        let mut v = vec![ScalarExpr::zero(); self.len()];
        for (m, c) in y.poly.terms() {
            let i = self
                .index_of(m)
                .ok_or_else(|| Error::Index(format!("monomial {} outside window", alg.format_monomial(m))))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn vector(&self, v: &[ScalarExpr]) -> LocalizedVector {
        let mut p = QPolynomial::zero();
        for (m, c) in self.monomials.iter().zip(v) {
            if !c.is_zero() {
                p.add_term(m.clone(), c);
            }
        }
        LocalizedVector::new(p, self.det_power)
    }
}

/// The representative with the smallest det power: divides by the (central)
/// quantum determinant while every homogeneous part is a multiple of it.
pub fn reduce_det(alg: &QMatrix, x: &LocalizedVector) -> Result<LocalizedVector> {
    let n = alg.n();
    let mut cur = alg.normalize(x);
    let det = alg.det();
    while cur.det_power > 0 && !cur.poly.is_zero() {
        let mut parts: std::collections::BTreeMap<usize, QPolynomial> = Default::default();
        for (m, c) in cur.poly.terms() {
            parts.entry(m.degree()).or_insert_with(QPolynomial::zero).add_term(m.clone(), c);
        }
        let mut quotient = QPolynomial::zero();
        for (deg, p) in parts {
            if deg < n {
                return Ok(cur);
            }
            let target = MonomialBasis::new(alg, deg, 0);
            let source = MonomialBasis::new(alg, deg - n, 0);
            let cols = source
                .monomials
                .iter()
                .map(|m| {
                    let prod = alg.mul(&det, &QPolynomial::monomial(m.clone(), ScalarExpr::one()));
                    target.coords(alg, &LocalizedVector::new(prod, 0))
                })
                .collect::<Result<Vec<_>>>()?;
            match coords_in_span(&target.coords(alg, &LocalizedVector::new(p, 0))?, &cols)? {
                Some(r) => quotient = quotient.add(&source.vector(&r).poly),
                None => return Ok(cur),
            }
        }
        cur = LocalizedVector::new(quotient, cur.det_power - 1);
    }
    Ok(cur)
}
