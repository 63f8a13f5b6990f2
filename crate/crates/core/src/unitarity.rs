//! Star structure of `U_q su_{n,n}`, the series labels, and an invariant
//! Hermitian form solver used to test unitarizability on a window.

use crate::action::{Rep, Untwisted};
use crate::canonical::{pq_basis, PqSign};
use crate::error::{Error, Result};
use crate::isotypic::{Decomposer, Signature};
use crate::linalg::{coords_in_span, kernel, CoordMatrix, CoordVector};
use crate::qmatrix::{LocalizedVector, QMatrix};
use crate::scalars::{specialize, Gauss, ParameterPoint, QExp, ScalarExpr, Twist, Value};
use crate::transitions::{classify, integral_difference, window, SignaturePredicate, StructureCase};
use crate::uqsl::{star, UGen, UWord};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesLabel {
    PrincipalUnitary,
    Complementary,
    Strange,
    NotUnitarizable,
    IntegerCase(u8),
}

impl SeriesLabel {
    pub fn is_unitary_series(self) -> bool {
        matches!(self, SeriesLabel::PrincipalUnitary | SeriesLabel::Complementary | SeriesLabel::Strange)
    }
}

impl fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesLabel::PrincipalUnitary => write!(f, "principal unitary series"),
            SeriesLabel::Complementary => write!(f, "complementary series"),
            SeriesLabel::Strange => write!(f, "strange series"),
            SeriesLabel::NotUnitarizable => write!(f, "not unitarizable"),
            SeriesLabel::IntegerCase(c) => write!(f, "integer case {}", c),
        }
    }
}

pub fn classify_series(n: usize, alpha: ParameterPoint, beta: ParameterPoint) -> Result<SeriesLabel> {
    integral_difference(&alpha, &beta)?;
    if let (Some(a), Some(b)) = (alpha.as_integer(), beta.as_integer()) {
        let s = a + b + n as i64;
        let case = if s >= 2 {
            1
        } else if s == 1 {
            2
        } else if s == 0 {
            3
        } else {
            4
        };
        return Ok(SeriesLabel::IntegerCase(case));
    }
    if alpha.im_units == 1 {
        return Ok(SeriesLabel::Strange);
    }
    let ni = Rational64::from_integer(n as i64);
    let one = Rational64::from_integer(1);
    let x = alpha.re + ni;
    let y = beta.re;
    // the two families overlap on Re(alpha+beta) = -n; the inequalities win
    if x.abs() < one && y.abs() < one && x * y < Rational64::zero() {
        return Ok(SeriesLabel::Complementary);
    }
    if alpha.re + beta.re == -ni {
        return Ok(SeriesLabel::PrincipalUnitary);
    }
    Ok(SeriesLabel::NotUnitarizable)
}

/// Simple subquotients carrying an invariant positive form in the integer cases.
pub fn unitary_submodules(n: usize, alpha: ParameterPoint, beta: ParameterPoint) -> Result<Vec<SignaturePredicate>> {
    let rep = classify(n, alpha, beta)?;
    Ok(match rep.case {
        StructureCase::Irreducible => match classify_series(n, alpha, beta)? {
            l if l.is_unitary_series() => vec![SignaturePredicate::all()],
            _ => vec![],
        },
        // the only unitary case here is the trivial module spanned by 1
        StructureCase::Case1 if alpha.as_integer() == Some(0) && beta.as_integer() == Some(0) => rep.simples,
        StructureCase::Case1 => vec![],
        _ => rep.simples,
    })
}

fn one_minus_q2(twist: &Twist, x: QExp) -> ScalarExpr {
    ScalarExpr::one().sub(&twist.q_pow(x.times(2)))
}

/// `c_k / c_{k+e_j}` forced by invariance:
/// `(1 - q^{2(-beta+k_j+1-j)}) / conj(1 - q^{2(alpha+k_j+1+n-j)})`.
pub fn c_recurrence(k: &Signature, j: usize, alpha: ParameterPoint, beta: ParameterPoint) -> Result<ScalarExpr> {
    integral_difference(&alpha, &beta)?;
    let n = k.n();
    if j == 0 || j > n {
        return Err(Error::Index(format!("j={} outside 1..{}", j, n)));
    }
    let kj = k.0[j - 1];
    let j_ = j as i64;
    let n_ = n as i64;
    let tw = Twist::concrete(alpha, beta);
    let num = one_minus_q2(&tw, QExp::beta().neg().plus_int(kj + 1 - j_));
    // q^{2 alpha} is real for im_units in {0, 1}, so only the coefficients conjugate
    let den = one_minus_q2(&tw, QExp::alpha().plus_int(kj + 1 + n_ - j_)).conj();
    if den.is_zero() || num.is_zero() {
        return Err(Error::Pole);
    }
    num.div(&den)
}

/// `q = s0^2` samples used for positivity checks: `q = 1/4` and `q = 49/100`.
pub fn q_samples() -> Vec<BigRational> {
    vec![
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        BigRational::new(BigInt::from(7), BigInt::from(10)),
    ]
}

trait Field: Clone {
    fn zero() -> Self;
    fn from_gauss(g: &Gauss) -> Self;
    fn from_value(v: &Value) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn conj(&self) -> Self;
    fn abs(&self) -> f64;
    fn to_c(&self) -> (f64, f64);
    /// Zero relative to `scale`.
    fn negligible(&self, scale: f64) -> bool;
    fn positive_real(&self) -> bool;
}

impl Field for Gauss {
    fn zero() -> Self {
        Gauss::zero()
    }
    fn from_gauss(g: &Gauss) -> Self {
        g.clone()
    }
    fn from_value(v: &Value) -> Option<Self> {
        v.exact().cloned()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn conj(&self) -> Self {
        Gauss::conj(self)
    }
    fn abs(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b)
    }
    fn to_c(&self) -> (f64, f64) {
        self.to_f64()
    }
    fn negligible(&self, _: f64) -> bool {
        self.is_zero()
    }
    fn positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }
}

#[derive(Clone, Copy, Debug)]
struct C64(f64, f64);

impl Field for C64 {
    fn zero() -> Self {
        C64(0.0, 0.0)
    }
    fn from_gauss(g: &Gauss) -> Self {
        let (a, b) = g.to_f64();
        C64(a, b)
    }
    fn from_value(v: &Value) -> Option<Self> {
        let (a, b) = v.to_f64();
        Some(C64(a, b))
    }
    fn add(&self, o: &Self) -> Self {
        C64(self.0 + o.0, self.1 + o.1)
    }
    fn sub(&self, o: &Self) -> Self {
        C64(self.0 - o.0, self.1 - o.1)
    }
    fn mul(&self, o: &Self) -> Self {
        C64(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(&self, o: &Self) -> Self {
        let d = o.0 * o.0 + o.1 * o.1;
        C64((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn conj(&self) -> Self {
        C64(self.0, -self.1)
    }
    fn abs(&self) -> f64 {
        self.0.hypot(self.1)
    }
    fn to_c(&self) -> (f64, f64) {
        (self.0, self.1)
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= TOLERANCE * scale
    }
    fn positive_real(&self) -> bool {
        self.0 > 0.0 && self.1.abs() <= TOLERANCE * self.0
    }
}

/// Fixed bases of the components and coordinates of vectors in them.
pub struct ComponentBases {
    decomposer: Decomposer,
    basis: Mutex<HashMap<Signature, Arc<Vec<LocalizedVector>>>>,
    raised: Mutex<HashMap<(Signature, i64), Arc<Vec<CoordVector>>>>,
}

fn min_det_power(k: &Signature) -> i64 {
    (-k.0[k.n() - 1]).max(0)
}

impl ComponentBases {
    pub fn new(base: Arc<Untwisted>) -> ComponentBases {
        ComponentBases {
            decomposer: Decomposer::new(base),
            basis: Mutex::new(HashMap::new()),
            raised: Mutex::new(HashMap::new()),
        }
    }

    pub fn decomposer(&self) -> &Decomposer {
        &self.decomposer
    }

    fn alg(&self) -> &Arc<QMatrix> {
        self.decomposer.base().alg()
    }

    pub fn basis(&self, k: &Signature) -> Result<Arc<Vec<LocalizedVector>>> {
        if let Some(b) = self.basis.lock().unwrap().get(k) {
            return Ok(b.clone());
        }
        let dec = self.decomposer.piece(k.total(), min_det_power(k))?;
        let comp = dec.component(k).ok_or_else(|| Error::Index(format!("no component {}", k)))?;
        let b = Arc::new(comp.basis.clone());
        self.basis.lock().unwrap().insert(k.clone(), b.clone());
        Ok(b)
    }

    pub fn weights(&self, k: &Signature) -> Result<Vec<Vec<i64>>> {
        let dec = self.decomposer.piece(k.total(), min_det_power(k))?;
        Ok(dec.component(k).ok_or_else(|| Error::Index(format!("no component {}", k)))?.weights.clone())
    }

    fn raised(&self, k: &Signature, p: i64) -> Result<Arc<Vec<CoordVector>>> {
        let key = (k.clone(), p);
        if let Some(r) = self.raised.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let alg = self.alg();
        let dec = self.decomposer.piece(k.total(), p)?;
        let cols = self
            .basis(k)?
            .iter()
            .map(|b| dec.basis.coords(alg, &alg.raise_det_power(b, p)))
            .collect::<Result<Vec<_>>>()?;
        let r = Arc::new(cols);
        self.raised.lock().unwrap().insert(key, r.clone());
        Ok(r)
    }

    /// Coordinates of `y`, assumed to lie in `V_k`, in the fixed basis of `V_k`.
    pub fn coords(&self, k: &Signature, y: &LocalizedVector) -> Result<CoordVector> {
        let dim = self.basis(k)?.len();
        if y.is_zero() {
            return Ok(vec![ScalarExpr::zero(); dim]);
        }
        let alg = self.alg();
        let y = alg.normalize(y);
        let p = y.det_power.max(min_det_power(k));
        let dec = self.decomposer.piece(k.total(), p)?;
        let c = dec.basis.coords(alg, &alg.raise_det_power(&y, p))?;
        coords_in_span(&c, &self.raised(k, p)?)?
            .ok_or_else(|| Error::Verification(format!("vector is not in V_{}", k)))
    }

    /// Coordinates of the `V_k` part of `y`.
    pub fn project_coords(&self, y: &LocalizedVector, k: &Signature) -> Result<CoordVector> {
        let part = self.decomposer.project(y, k)?;
        self.coords(k, &part)
    }
}

fn specialize_all(v: &[ScalarExpr], s0: &BigRational, a: &ParameterPoint, b: &ParameterPoint) -> Result<Vec<Value>> {
    v.iter().map(|e| specialize(e, s0, a, b)).collect()
}

/// The `U_q s(u_n x u_n)`-invariant form on `V_k` at `q = s0^2`, normalized
/// by `<v_h, v_h> = 1`. Entry `[a][b]` is `<e_b, e_a>`, so `<x, y> = y^H G x`.
pub fn component_gram(bases: &ComponentBases, k: &Signature, s0: &BigRational) -> Result<Vec<Vec<Gauss>>> {
    let base = bases.decomposer.base().clone();
    let n = base.n();
    let basis = bases.basis(k)?;
    let weights = bases.weights(k)?;
    let dim = basis.len();
    let rep = Rep::untwisted(base);
    let zero = ParameterPoint::int(0);
    let matrix = |w: &UWord| -> Result<Vec<Vec<Gauss>>> {
        let mut m = vec![vec![Gauss::zero(); dim]; dim];
        for (b, x) in basis.iter().enumerate() {
            let c = bases.coords(k, &rep.act(w, x)?)?;
            for (a, e) in c.iter().enumerate() {
                m[a][b] = specialize(e, s0, &zero, &zero)?
                    .exact()
                    .cloned()
                    .ok_or_else(|| Error::Unsupported("component action is not exact".into()))?;
            }
        }
        Ok(m)
    };
    let mut vars = BTreeMap::new();
    for a in 0..dim {
        for b in 0..dim {
            if weights[a] == weights[b] {
                let next = vars.len();
                vars.insert((a, b), next);
            }
        }
    }
    let mut rows = Vec::new();
    for j in (1..2 * n).filter(|&j| j != n) {
        for g in [UGen::E(j), UGen::F(j)] {
            let w = UWord::gen(g);
            let m = matrix(&w)?;
            let ms = matrix(&star(&w, n))?;
            // G M = (M*)^H G
            for a in 0..dim {
                for b in 0..dim {
                    let mut row = vec![ScalarExpr::zero(); vars.len()];
                    for c in 0..dim {
                        if let Some(&i) = vars.get(&(a, c)) {
                            if !m[c][b].is_zero() {
                                row[i] = row[i].add(&ScalarExpr::constant(m[c][b].clone()));
                            }
                        }
                        if let Some(&i) = vars.get(&(c, b)) {
                            if !ms[c][a].is_zero() {
                                row[i] = row[i].sub(&ScalarExpr::constant(ms[c][a].conj()));
                            }
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let ker = if rows.is_empty() {
        (0..vars.len())
            .map(|i| (0..vars.len()).map(|l| if l == i { ScalarExpr::one() } else { ScalarExpr::zero() }).collect())
            .collect()
    } else {
        kernel(&CoordMatrix::from_rows(rows))
    };
    if ker.len() != 1 {
        return Err(Error::Verification(format!("{}-dimensional space of invariant forms on V_{}", ker.len(), k)));
    }
    let v: Vec<Gauss> = ker[0]
        .iter()
        .map(|x| x.as_constant().ok_or_else(|| Error::Unsupported("non-constant form entry".into())))
        .collect::<Result<_>>()?;
    let top = v[vars[&(0, 0)]].clone();
    if top.is_zero() {
        return Err(Error::Verification(format!("invariant form on V_{} vanishes on v_h", k)));
    }
    let mut g = vec![vec![Gauss::zero(); dim]; dim];
    for (&(a, b), &i) in &vars {
        g[a][b] = &v[i] / &top;
    }
    Ok(g)
}

/// Positive definiteness of a Hermitian matrix through its `LDL^H` pivots.
pub fn is_positive_definite(g: &[Vec<Gauss>]) -> bool {
    let n = g.len();
    for a in 0..n {
        for b in 0..n {
            if g[a][b] != g[b][a].conj() {
                return false;
            }
        }
    }
    let mut m = g.to_vec();
    for i in 0..n {
        let p = m[i][i].clone();
        if !p.im.is_zero() || !p.re.is_positive() {
            return false;
        }
        for r in i + 1..n {
            if m[r][i].is_zero() {
                continue;
            }
            let f = &m[r][i] / &p;
            for c in i..n {
                let x = &f * &m[i][c];
                m[r][c] = &m[r][c] - &x;
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeRatio {
    pub source: Signature,
    pub j: usize,
    /// Solved `c_k / c_{k+e_j}`, `None` when the constraints are empty.
    pub solved: Option<f64>,
    pub predicted: Option<f64>,
}

impl EdgeRatio {
    pub fn relative_error(&self) -> Option<f64> {
        let (a, b) = (self.solved?, self.predicted?);
        Some((a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantForm {
    pub n: usize,
    pub alpha: ParameterPoint,
    pub beta: ParameterPoint,
    pub s0: String,
    pub exact: bool,
    pub feasible: bool,
    pub reason: Option<String>,
    /// Normalized by `c = 1` at the first node of each connected piece.
    #[serde(serialize_with = "signature_keys")]
    pub c: BTreeMap<Signature, f64>,
    pub edges: Vec<EdgeRatio>,
}

fn signature_keys<S: serde::Serializer>(c: &BTreeMap<Signature, f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(c.iter().map(|(k, v)| (k.to_string(), v)))
}

impl InvariantForm {
    pub fn max_recurrence_error(&self) -> f64 {
        self.edges.iter().filter_map(|e| e.relative_error()).fold(0.0, f64::max)
    }
}

/// Solver state shared between parameter points of one `n`.
pub struct FormSolver {
    n: usize,
    bases: ComponentBases,
    grams: Mutex<HashMap<(Signature, String), Arc<Vec<Vec<Gauss>>>>>,
    scales: Mutex<HashMap<(i64, String), Arc<BTreeMap<Signature, Gauss>>>>,
}

impl FormSolver {
    pub fn new(n: usize) -> FormSolver {
        let base = Untwisted::new(QMatrix::new(n));
        FormSolver {
            n,
            bases: ComponentBases::new(base),
            grams: Mutex::new(HashMap::new()),
            scales: Mutex::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gram(&self, k: &Signature, s0: &BigRational) -> Result<Arc<Vec<Vec<Gauss>>>> {
        let key = (k.clone(), s0.to_string());
        if let Some(g) = self.grams.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(component_gram(&self.bases, k, s0)?);
        self.grams.lock().unwrap().insert(key, g.clone());
        Ok(g)
    }

    /// Solves for `c_k` on the window nodes satisfying `restrict`.
    pub fn solve(
        &self,
        alpha: ParameterPoint,
        beta: ParameterPoint,
        bound: i64,
        restrict: &SignaturePredicate,
        s0: &BigRational,
    ) -> Result<InvariantForm> {
        integral_difference(&alpha, &beta)?;
        let nodes: Vec<Signature> = window(self.n, bound).into_iter().filter(|k| restrict.contains(k)).collect();
        if nodes.is_empty() {
            return Err(Error::Usage("empty window".into()));
        }
        let scales = self.scales(bound, s0)?;
        let rep = Rep::twisted(self.bases.decomposer.base().clone(), Twist::concrete(alpha, beta));
        let data = EdgeData::collect(self, &rep, &nodes, &alpha, &beta, s0)?;
        let exact = data.iter().all(|e| e.exact());
        let mut form = if exact {
            self.assemble::<Gauss>(&nodes, &data, &alpha, &beta, s0, &scales)?.0
        } else {
            self.assemble::<C64>(&nodes, &data, &alpha, &beta, s0, &scales)?.0
        };
        form.exact = exact;
        Ok(form)
    }

    /// Rescaling of the component forms, fixed once per window and `q`, under
    /// which `T+` and `T-` are adjoint up to the sign in the invariance
    /// condition. The paper's forms come from an invariant integral; here the
    /// scales are read off at the reference point `alpha = beta = -1/2`, where
    /// no coefficient vanishes, and must be consistent around every cycle.
    pub fn scales(&self, bound: i64, s0: &BigRational) -> Result<Arc<BTreeMap<Signature, Gauss>>> {
        let key = (bound, s0.to_string());
        if let Some(m) = self.scales.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let nodes = window(self.n, bound);
        let (a, b) = (ParameterPoint::ratio(-1, 2), ParameterPoint::ratio(-1, 2));
        let rep = Rep::twisted(self.bases.decomposer.base().clone(), Twist::concrete(a, b));
        let data = EdgeData::collect(self, &rep, &nodes, &a, &b, s0)?;
        let ones: BTreeMap<Signature, Gauss> = nodes.iter().map(|k| (k.clone(), Gauss::one())).collect();
        let (_, ratios) = self.assemble::<Gauss>(&nodes, &data, &a, &b, s0, &ones)?;
        let mut adj: BTreeMap<Signature, Vec<(Signature, Gauss)>> = BTreeMap::new();
        for (k, t, j, rho) in ratios {
            let pred = specialize(&c_recurrence(&k, j, a, b)?, s0, &a, &b)?
                .exact()
                .cloned()
                .ok_or_else(|| Error::Unsupported("reference point is not exact".into()))?;
            // N_t / N_k = pred / rho
            let f = &pred / &rho;
            adj.entry(k.clone()).or_default().push((t.clone(), f.clone()));
            adj.entry(t).or_default().push((k, f.inv()));
        }
        let mut scale: BTreeMap<Signature, Gauss> = BTreeMap::new();
        for root in &nodes {
            if scale.contains_key(root) {
                continue;
            }
            scale.insert(root.clone(), Gauss::one());
            let mut queue = VecDeque::from([root.clone()]);
            while let Some(x) = queue.pop_front() {
                let nx = scale[&x].clone();
                for (y, f) in adj.get(&x).cloned().unwrap_or_default() {
                    let ny = &nx * &f;
                    match scale.get(&y) {
                        None => {
                            scale.insert(y.clone(), ny);
                            queue.push_back(y);
                        }
                        Some(old) if *old != ny => {
                            return Err(Error::Verification(format!("component scales disagree around V_{}", y)));
                        }
                        _ => {}
                    }
                }
            }
        }
        let m = Arc::new(scale);
        self.scales.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    fn assemble<F: Field>(
        &self,
        nodes: &[Signature],
        data: &[EdgeData],
        alpha: &ParameterPoint,
        beta: &ParameterPoint,
        s0: &BigRational,
        scales: &BTreeMap<Signature, Gauss>,
    ) -> Result<(InvariantForm, Vec<(Signature, Signature, usize, F)>)> {
        let mut form = InvariantForm {
            n: self.n,
            alpha: *alpha,
            beta: *beta,
            s0: s0.to_string(),
            exact: false,
            feasible: true,
            reason: None,
            c: BTreeMap::new(),
            edges: vec![],
        };
        let fail = |form: &mut InvariantForm, why: String| {
            if form.feasible {
                form.feasible = false;
                form.reason = Some(why);
            }
        };
        for k in nodes {
            if !scales[k].im.is_zero() || !scales[k].re.is_positive() || !is_positive_definite(&self.gram(k, s0)?) {
                fail(&mut form, format!("component form on V_{} is not positive", k));
            }
        }
        // ratio c_k / c_t per active edge
        let mut ratios: Vec<(usize, usize, usize, F)> = Vec::new();
        let index: BTreeMap<&Signature, usize> = nodes.iter().enumerate().map(|(i, k)| (k, i)).collect();
        for e in data {
            let scaled = |k: &Signature| -> Result<Vec<Vec<F>>> {
                let f = &scales[k];
                Ok(self.gram(k, s0)?.iter().map(|r| r.iter().map(|x| F::from_gauss(&(x * f))).collect()).collect())
            };
            let (gk, gt) = (scaled(&e.source)?, scaled(&e.target)?);
            let conv = |v: &Vec<Value>| -> Vec<F> { v.iter().map(|x| F::from_value(x).expect("exact value")).collect() };
            let ups: Vec<Vec<F>> = e.up.iter().map(conv).collect();
            let downs: Vec<Vec<F>> = e.down.iter().map(conv).collect();
            let (dk, dt) = (gk.len(), gt.len());
            let mut pairs = Vec::new();
            for (xi, (up_xi, down_xi)) in ups.chunks(dk).zip(downs.chunks(dt)).enumerate() {
                let _ = xi;
                for (a, x) in up_xi.iter().enumerate() {
                    for (b, y) in down_xi.iter().enumerate() {
                        let lhs = (0..dt).fold(F::zero(), |acc, c| acc.add(&gt[b][c].mul(&x[c])));
                        let rhs = (0..dk).fold(F::zero(), |acc, c| acc.add(&y[c].conj().mul(&gk[c][a])));
                        pairs.push((lhs, rhs));
                    }
                }
            }
            let scale = pairs.iter().map(|(l, r)| l.abs().max(r.abs())).fold(0.0, f64::max);
            let predicted = c_recurrence(&e.source, e.j, *alpha, *beta)
                .and_then(|r| specialize(&r, s0, alpha, beta))
                .ok()
                .map(|v| v.to_f64().0);
            let mut edge = EdgeRatio { source: e.source.clone(), j: e.j, solved: None, predicted };
            let active: Vec<&(F, F)> = pairs.iter().filter(|(l, r)| !l.negligible(scale) || !r.negligible(scale)).collect();
            if active.is_empty() {
                form.edges.push(edge);
                continue;
            }
            let pivot = active.iter().max_by(|a, b| a.1.abs().total_cmp(&b.1.abs())).unwrap();
            if pivot.1.negligible(scale) {
                fail(&mut form, format!("c_{} forced to vanish", e.target));
                form.edges.push(edge);
                continue;
            }
            let rho = pivot.0.div(&pivot.1);
            if rho.negligible(1.0) {
                fail(&mut form, format!("c_{} forced to vanish", e.source));
                form.edges.push(edge);
                continue;
            }
            let consistent = active.iter().all(|(l, r)| l.sub(&rho.mul(r)).negligible(scale.max(rho.abs() * scale)));
            if !consistent {
                fail(&mut form, format!("constraints between V_{} and V_{} are inconsistent", e.source, e.target));
            }
            edge.solved = Some(rho.to_c().0);
            if !rho.positive_real() {
                fail(&mut form, format!("c_{}/c_{} = {:?} is not positive", e.source, e.target, rho.to_c()));
            }
            form.edges.push(edge);
            ratios.push((index[&e.source], index[&e.target], e.j, rho));
        }
        // propagate c along the edges, checking cycles
        let mut c: Vec<Option<F>> = vec![None; nodes.len()];
        let mut adj: Vec<Vec<(usize, F, bool)>> = vec![vec![]; nodes.len()];
        for (s, t, _, r) in &ratios {
            adj[*s].push((*t, r.clone(), true));
            adj[*t].push((*s, r.clone(), false));
        }
        let start = nodes.iter().position(|k| k.0.iter().all(|&x| x == 0)).unwrap_or(0);
        let order: Vec<usize> = std::iter::once(start).chain(0..nodes.len()).collect();
        for root in order {
            if c[root].is_some() {
                continue;
            }
            c[root] = Some(F::from_gauss(&Gauss::one()));
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let cx = c[x].clone().unwrap();
                for (y, r, forward) in &adj[x] {
                    // forward: c_x / c_y = r
                    let cy = if *forward { cx.div(r) } else { cx.mul(r) };
                    match &c[*y] {
                        None => {
                            c[*y] = Some(cy);
                            queue.push_back(*y);
                        }
                        Some(old) => {
                            if !old.sub(&cy).negligible(old.abs().max(cy.abs())) {
                                fail(&mut form, format!("c_{} is not well defined around a cycle", nodes[*y]));
                            }
                        }
                    }
                }
            }
        }
        for (k, v) in nodes.iter().zip(&c) {
            let v = v.clone().unwrap();
            if !v.positive_real() {
                fail(&mut form, format!("c_{} = {:?} is not positive", k, v.to_c()));
            }
            form.c.insert(k.clone(), v.to_c().0);
        }
        let ratios = ratios.into_iter().map(|(s, t, j, r)| (nodes[s].clone(), nodes[t].clone(), j, r)).collect();
        Ok((form, ratios))
    }
}

/// Specialized coordinates for one edge `V_k -> V_{k+e_j}`.
struct EdgeData {
    source: Signature,
    target: Signature,
    j: usize,
    /// `P_t pi(xi) e_a` for each pq entry `xi` and source basis vector `e_a`.
    up: Vec<Vec<Value>>,
    /// `P_k pi(xi*) f_b` for each pq entry `xi` and target basis vector `f_b`.
    down: Vec<Vec<Value>>,
}

impl EdgeData {
    fn exact(&self) -> bool {
        self.up.iter().chain(&self.down).flatten().all(|v| v.exact().is_some())
    }

    fn collect(
        solver: &FormSolver,
        rep: &Rep,
        nodes: &[Signature],
        alpha: &ParameterPoint,
        beta: &ParameterPoint,
        s0: &BigRational,
    ) -> Result<Vec<EdgeData>> {
        let n = solver.n;
        let xis: Vec<UWord> = pq_basis(PqSign::Plus, n).into_iter().flatten().collect();
        let stars: Vec<UWord> = xis.iter().map(|w| star(w, n)).collect();
        let bases = &solver.bases;
        let mut out = Vec::new();
        for k in nodes {
            for j in 1..=n {
                let t = k.shifted(j, 1);
                if !nodes.contains(&t) {
                    continue;
                }
                let (bk, bt) = (bases.basis(k)?, bases.basis(&t)?);
                let mut up = Vec::new();
                let mut down = Vec::new();
                for (xi, xs) in xis.iter().zip(&stars) {
                    for x in bk.iter() {
                        let c = bases.project_coords(&rep.act(xi, x)?, &t)?;
                        up.push(specialize_all(&c, s0, alpha, beta)?);
                    }
                    for y in bt.iter() {
                        let c = bases.project_coords(&rep.act(xs, y)?, k)?;
                        down.push(specialize_all(&c, s0, alpha, beta)?);
                    }
                }
                out.push(EdgeData { source: k.clone(), target: t, j, up, down });
            }
        }
        Ok(out)
    }
}

/// One-shot form of [`FormSolver::solve`].
pub fn invariant_form_solve(
    n: usize,
    alpha: ParameterPoint,
    beta: ParameterPoint,
    bound: i64,
    restrict: &SignaturePredicate,
    s0: &BigRational,
) -> Result<InvariantForm> {
    FormSolver::new(n).solve(alpha, beta, bound, restrict, s0)
}
