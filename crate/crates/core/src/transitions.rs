//! Transition maps between neighbouring components `V_k -> V_{k +- e_j}`,
//! the word-sum scalar on highest vectors, and the submodule lattice for
//! integral parameters.

use crate::action::{Rep, Untwisted};
use crate::canonical::{build_fmj, k_minus, kminus_eigenvalue, pq_basis, pq_entry, proportionality, PqSign};
use crate::error::{Error, Result};
use crate::isotypic::{vh_vector, Decomposer, Signature};
use crate::linalg::{coords_in_span, CoordMatrix, CoordVector};
use crate::qmatrix::{LocalizedVector, QMatrix};
use crate::report::{Check, Report};
use crate::scalars::{ParameterPoint, QExp, ScalarExpr, Twist};
use crate::uqsl::UWord;
use num_rational::Rational64;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn delta(self) -> i64 {
        match self {
            Direction::Up => 1,
            Direction::Down => -1,
        }
    }

    fn pq(self) -> PqSign {
        match self {
            Direction::Up => PqSign::Plus,
            Direction::Down => PqSign::Minus,
        }
    }
}

/// `q^{q_power} [qint_arg]_q`: the parameter-dependent part of a transition map.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionCoefficient {
    pub j: usize,
    pub direction: Direction,
    pub q_power: QExp,
    pub qint_arg: QExp,
}

impl TransitionCoefficient {
    /// Up: `q^{-beta-n/2} [beta-k_j+j-1]`. Down: `q^{alpha+n/2} [alpha+k_j+n-j]`.
    pub fn new(k: &Signature, j: usize, direction: Direction) -> TransitionCoefficient {
        let n = k.n() as i64;
        let kj = k.0[j - 1];
        let j_ = j as i64;
        let (q_power, qint_arg) = match direction {
            Direction::Up => (QExp::beta().neg().plus(QExp::half(-n)), QExp::beta().plus_int(j_ - 1 - kj)),
            Direction::Down => (QExp::alpha().plus(QExp::half(n)), QExp::alpha().plus_int(kj + n - j_)),
        };
        TransitionCoefficient { j, direction, q_power, qint_arg }
    }

    pub fn scalar(&self, twist: &Twist) -> ScalarExpr {
        twist.q_pow(self.q_power).mul(&twist.qint(self.qint_arg))
    }

    /// Whether `[qint_arg]_q` vanishes at concrete parameters.
    pub fn vanishes_at(&self, alpha: &ParameterPoint, beta: &ParameterPoint) -> bool {
        let x = &self.qint_arg;
        let p = if x.a != 0 { alpha } else { beta };
        qint_vanishes(p, x.half / 2)
    }
}

/// `[p + c]_q = 0` exactly when `q^{2(p+c)} = 1`, i.e. `p` real and `p + c = 0`.
pub fn qint_vanishes(p: &ParameterPoint, c: i64) -> bool {
    p.im_units == 0 && p.re + c == Rational64::from_integer(0)
}

/// Symbolic-mode data shared by the map computations.
pub struct TransitionContext {
    pub rep: Rep,
    pub decomposer: Decomposer,
    pub twist: Twist,
}

impl TransitionContext {
    pub fn new(n: usize, d: i64) -> TransitionContext {
        let base = Untwisted::new(QMatrix::new(n));
        let twist = Twist::symbolic(d);
        TransitionContext {
            rep: Rep::twisted(base.clone(), twist.clone()),
            decomposer: Decomposer::new(base),
            twist,
        }
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    pub fn alg(&self) -> &Arc<QMatrix> {
        self.rep.alg()
    }

    /// Basis of `V_k` in the piece of det power `p`, with that piece's coordinates.
    fn component(&self, k: &Signature, p: i64) -> Result<(Vec<LocalizedVector>, Arc<crate::isotypic::Decomposition>)> {
        let dec = self.decomposer.piece(k.total(), p)?;
        let comp = dec
            .component(k)
            .ok_or_else(|| Error::Index(format!("no component {} in grade {} det power {}", k, k.total(), p)))?;
        Ok((comp.basis.clone(), dec))
    }
}

fn det_power_of(k: &Signature) -> i64 {
    (-k.0[k.n() - 1]).max(0)
}

/// The map `p_q^{+-} (x) V_k -> V_{k +- e_j}`, in component coordinates.
#[derive(Clone, Debug)]
pub struct TransitionMap {
    pub source: Signature,
    pub target: Signature,
    pub coefficient: TransitionCoefficient,
    /// `false` when the target is not dominant, so that `V_target = 0`.
    pub target_exists: bool,
    /// One column per `(pq entry, source basis vector)`, entries in row-major `(a, b)` order.
    pub images: Vec<CoordVector>,
    /// `images` divided by the coefficient scalar.
    pub remainder: Vec<CoordVector>,
}

impl TransitionMap {
    pub fn rank(&self) -> usize {
        if self.images.is_empty() {
            return 0;
        }
        CoordMatrix::from_columns(&self.images, self.images[0].len()).rank()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|c| c.iter().all(|x| x.is_zero()))
    }
}

pub fn up_map(ctx: &TransitionContext, k: &Signature, j: usize) -> Result<TransitionMap> {
    transition_map(ctx, k, j, Direction::Up)
}

pub fn down_map(ctx: &TransitionContext, k: &Signature, j: usize) -> Result<TransitionMap> {
    transition_map(ctx, k, j, Direction::Down)
}

fn transition_map(ctx: &TransitionContext, k: &Signature, j: usize, dir: Direction) -> Result<TransitionMap> {
    let n = ctx.n();
    if k.n() != n || !k.is_dominant() || j == 0 || j > n {
        return Err(Error::Usage(format!("bad signature {} or index {} for n={}", k, j, n)));
    }
    let target = k.shifted(j, dir.delta());
    let coefficient = TransitionCoefficient::new(k, j, dir);
    if !target.is_dominant() {
        return Ok(TransitionMap {
            source: k.clone(),
            target,
            coefficient,
            target_exists: false,
            images: vec![],
            remainder: vec![],
        });
    }
    let alg = ctx.alg();
    let ps = det_power_of(k);
    let (src_basis, _) = ctx.component(k, ps)?;
    let pt = (ps + 1).max(det_power_of(&target));
    let tdec = ctx.decomposer.piece(target.total(), pt)?;
    let tcomp = tdec
        .component(&target)
        .ok_or_else(|| Error::Index(format!("no component {}", target)))?;
    let scalar = coefficient.scalar(&ctx.twist);
    let inv = scalar.inv()?;
    let mut images = Vec::new();
    for row in pq_basis(dir.pq(), n) {
        for xi in row {
            for x in &src_basis {
                let y = ctx.rep.act(&xi, x)?;
                let part = ctx.decomposer.project(&y, &target)?;
                let c = tdec.basis.coords(alg, &part)?;
                let local = coords_in_span(&c, &tcomp.coords)?
                    .ok_or_else(|| Error::Verification(format!("projection onto {} left the component", target)))?;
                images.push(local);
            }
        }
    }
    let remainder: Vec<CoordVector> =
        images.iter().map(|c| c.iter().map(|x| x.mul(&inv)).collect()).collect();
    let map = TransitionMap { source: k.clone(), target, coefficient, target_exists: true, images, remainder };
    let u_free = map.remainder.iter().flatten().all(|x| !x.uses_var(1) && !x.uses_var(2));
    if !u_free {
        return Err(Error::Verification(format!(
            "{:?} map at {} via j={} does not factor through its coefficient",
            dir, k, j
        )));
    }
    if map.is_zero() {
        return Err(Error::Verification(format!("{:?} map at {} via j={} is zero", dir, k, j)));
    }
    Ok(map)
}

/// Dominant signatures with all `|k_i| <= bound`.
pub fn window(n: usize, bound: i64) -> Vec<Signature> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        if cur.len() == n {
            out.push(Signature(cur.clone()));
            return;
        }
        let hi = cur.last().copied().unwrap_or(bound);
        for x in (-bound..=hi).rev() {
            cur.push(x);
            rec(n, bound, cur, out);
            cur.pop();
        }
    }
    rec(n, bound, &mut cur, &mut out);
    out
}

/// Factorization of every transition map on the window.
pub fn check_factorization(ctx: &TransitionContext, bound: i64) -> Result<Report> {
    let mut r = Report::new("transitions");
    let n = ctx.n();
    for k in window(n, bound) {
        for j in 1..=n {
            for dir in [Direction::Up, Direction::Down] {
                let mut idx = k.0.clone();
                idx.push(j as i64);
                idx.push(dir.delta());
                let name = format!("{:?} factorization", dir).to_lowercase();
                match transition_map(ctx, &k, j, dir) {
                    Ok(m) => r.push(Check::new(name, idx, true).with_detail(if m.target_exists {
                        format!("rank {}", m.rank())
                    } else {
                        "target outside K".into()
                    })),
                    Err(Error::Verification(e)) => r.push(Check::new(name, idx, false).with_detail(e)),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(r)
}

/// Which second-factor chain accompanies the target column `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    /// Chain length `n - j`: the `p_q^+` entry with `b = n - j + 1`.
    Reversed,
    /// Chain length `j - 1`: `b = j`.
    Literal,
}

/// `sum_m c_m xi_{m,b} F_mj K_-(j,1,m-1)` with `c_m = (-q^2)^{m-1}`, except that the
/// last term carries an extra `q^{-1}` when `j > 1`, and overall sign `(-1)^{j-1}`.
pub fn prop21_word(n: usize, j: usize, column: Column) -> Result<UWord> {
    let b = match column {
        Column::Reversed => n - j + 1,
        Column::Literal => j,
    };
    let mut acc = UWord::zero();
    let mq2 = ScalarExpr::q_pow(2).neg();
    for m in 1..=j {
        let mut c = mq2.pow(m as i64 - 1)?;
        if m == j && j > 1 {
            c = c.mul(&ScalarExpr::q_pow(-1));
        }
        // pq_entry carries (-1)^{b-1}
        let sign = if (b + j).is_multiple_of(2) { 1 } else { -1 };
        let w = pq_entry(PqSign::Plus, n, m, b).mul(&build_fmj(m, j)?).mul(&k_minus(j, 1, m - 1));
        acc = acc.add(&w.scale(&c.mul(&ScalarExpr::int(sign))));
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct Prop21Outcome {
    pub k: Signature,
    pub j: usize,
    /// The word sum applied to `v^h_k` already lies in `V_{k+e_j}`.
    pub in_target: bool,
    /// `scalar * v^h_{k+e_j}` equals the projection, when proportional.
    pub scalar: Option<ScalarExpr>,
    /// `q^{-beta-n/2+k_j+j} [beta-k_j+j-1]_q kappa_-(j,1,j-1)`.
    pub expected: ScalarExpr,
    pub ratio: Option<ScalarExpr>,
}

impl Prop21Outcome {
    pub fn exact(&self) -> bool {
        self.ratio.as_ref().is_some_and(|r| r.is_one())
    }

    /// The ratio as a power of `q^{1/2}`, if it is one.
    pub fn ratio_half_power(&self) -> Option<i32> {
        self.ratio.as_ref().and_then(s_power)
    }
}

/// `e` as `s^m` with coefficient 1.
pub fn s_power(e: &ScalarExpr) -> Option<i32> {
    if !e.is_laurent() || e.numer().len() != 1 {
        return None;
    }
    let (m, c) = &e.numer().terms()[0];
    if !c.is_one() || m.0[1] != 0 || m.0[2] != 0 {
        return None;
    }
    Some(m.0[0])
}

pub fn prop21_evaluate(ctx: &TransitionContext, k: &Signature, j: usize, column: Column) -> Result<Prop21Outcome> {
    let n = ctx.n();
    let alg = ctx.alg();
    let target = k.shifted(j, 1);
    if !k.is_dominant() || !target.is_dominant() {
        return Err(Error::Usage(format!("{} -> {} leaves the dominant cone", k, target)));
    }
    let kj = k.0[j - 1];
    let tw = &ctx.twist;
    let expected = tw
        .q_pow(QExp::beta().neg().plus(QExp::half(-(n as i64))).plus_int(kj + j as i64))
        .mul(&tw.qint(QExp::beta().plus_int(j as i64 - 1 - kj)))
        .mul(&kminus_eigenvalue(j, 1, j - 1, k));
    let vh = vh_vector(alg, k)?;
    let y = ctx.rep.act(&prop21_word(n, j, column)?, &vh)?;
    let p = ctx.decomposer.project(&y, &target)?;
    let in_target = alg.loc_equal(&p, &y);
    let scalar = proportionality(alg, &p, &vh_vector(alg, &target)?);
    let ratio = scalar.as_ref().and_then(|s| s.div(&expected).ok());
    Ok(Prop21Outcome { k: k.clone(), j, in_target, scalar, expected, ratio })
}

// ---------------------------------------------------------------------------
// Integral structure

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub j: usize,
    pub direction: Direction,
}

/// Is the edge `k -> k +- e_j` present at concrete parameters?
pub fn edge_present(alpha: &ParameterPoint, beta: &ParameterPoint, k: &Signature, j: usize, dir: Direction) -> bool {
    if !k.shifted(j, dir.delta()).is_dominant() {
        return false;
    }
    !TransitionCoefficient::new(k, j, dir).vanishes_at(alpha, beta)
}

#[derive(Clone, Debug)]
pub struct Lattice {
    pub n: usize,
    pub bound: i64,
    pub alpha: ParameterPoint,
    pub beta: ParameterPoint,
    pub nodes: Vec<Signature>,
    /// Present edges; targets may lie outside the window.
    pub edges: Vec<Edge>,
    present: BTreeSet<(usize, usize, Direction)>,
}

impl Lattice {
    pub fn node_index(&self, k: &Signature) -> Option<usize> {
        self.nodes.binary_search(k).ok()
    }

    pub fn target(&self, e: &Edge) -> Signature {
        self.nodes[e.from].shifted(e.j, e.direction.delta())
    }

    pub fn has_edge(&self, k: &Signature, j: usize, dir: Direction) -> bool {
        self.node_index(k).is_some_and(|i| self.present.contains(&(i, j, dir)))
    }
}

pub fn lattice(n: usize, alpha: ParameterPoint, beta: ParameterPoint, bound: i64) -> Result<Lattice> {
    integral_difference(&alpha, &beta)?;
    let mut nodes = window(n, bound);
    nodes.sort();
    let mut edges = Vec::new();
    for (i, k) in nodes.iter().enumerate() {
        for j in 1..=n {
            for dir in [Direction::Up, Direction::Down] {
                if edge_present(&alpha, &beta, k, j, dir) {
                    edges.push(Edge { from: i, j, direction: dir });
                }
            }
        }
    }
    let present = edges.iter().map(|e| (e.from, e.j, e.direction)).collect();
    Ok(Lattice { n, bound, alpha, beta, nodes, edges, present })
}

pub(crate) fn integral_difference(alpha: &ParameterPoint, beta: &ParameterPoint) -> Result<i64> {
    let d = alpha.re - beta.re;
    if alpha.im_units != beta.im_units || !d.is_integer() {
        return Err(Error::Usage(format!("alpha - beta = {} - {} is not an integer", alpha, beta)));
    }
    Ok(d.to_integer())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Bound {
    pub j: usize,
    pub rel: Relation,
    pub value: i64,
}

impl Bound {
    pub fn holds(&self, k: &Signature) -> bool {
        let x = k.0[self.j - 1];
        match self.rel {
            Relation::Le => x <= self.value,
            Relation::Ge => x >= self.value,
            Relation::Eq => x == self.value,
        }
    }
}

/// A conjunction of coordinate bounds on dominant signatures.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignaturePredicate {
    pub bounds: Vec<Bound>,
    /// The empty set (the bounds are ignored).
    pub empty: bool,
}

impl SignaturePredicate {
    pub fn all() -> SignaturePredicate {
        SignaturePredicate { bounds: vec![], empty: false }
    }

    pub fn none() -> SignaturePredicate {
        SignaturePredicate { bounds: vec![], empty: true }
    }

    pub fn of(mut bounds: Vec<Bound>) -> SignaturePredicate {
        bounds.sort();
        bounds.dedup();
        SignaturePredicate { bounds, empty: false }
    }

    pub fn contains(&self, k: &Signature) -> bool {
        !self.empty && k.is_dominant() && self.bounds.iter().all(|b| b.holds(k))
    }

    /// Bounded in every coordinate `1..=n`.
    pub fn is_bounded(&self, n: usize) -> bool {
        self.empty
            || (1..=n).all(|j| {
                let has = |r| self.bounds.iter().any(|b| b.j == j && (b.rel == r || b.rel == Relation::Eq));
                has(Relation::Le) && has(Relation::Ge)
            })
    }
}

impl fmt::Display for SignaturePredicate {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.empty {
            return write!(f, "none");
        }
        if self.bounds.is_empty() {
            return write!(f, "all");
        }
        let parts: Vec<String> = self
            .bounds
            .iter()
            .map(|b| {
                let op = match b.rel {
                    Relation::Le => "<=",
                    Relation::Ge => ">=",
                    Relation::Eq => "=",
                };
                format!("k{} {} {}", b.j, op, b.value)
            })
            .collect();
        write!(f, "{}", parts.join(" & "))
    }
}

impl Serialize for SignaturePredicate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StructureCase {
    #[serde(rename = "irreducible")]
    Irreducible,
    #[serde(rename = "case1")]
    Case1,
    #[serde(rename = "case2")]
    Case2,
    #[serde(rename = "case3")]
    Case3,
    #[serde(rename = "case4")]
    Case4,
}

/// `L_j^+ : k_j = beta + j - 1` and `L_j^- : k_j = -alpha - n + j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hyperplane {
    pub j: usize,
    pub sign: char,
    /// The right-hand side, e.g. `"-1/2"` or `"2+i*pi/h"`.
    pub value: String,
    /// Integral right-hand side, when lattice points can lie on it.
    pub level: Option<i64>,
}

pub fn hyperplanes(n: usize, alpha: &ParameterPoint, beta: &ParameterPoint) -> Vec<Hyperplane> {
    let mut out = Vec::new();
    for j in 1..=n {
        let plus = beta.shift(j as i64 - 1);
        let minus = alpha.neg().shift(j as i64 - n as i64);
        for (sign, p) in [('+', plus), ('-', minus)] {
            out.push(Hyperplane { j, sign, value: p.to_string(), level: p.as_integer() });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub alpha: ParameterPoint,
    pub beta: ParameterPoint,
    pub case: StructureCase,
    pub irreducible: bool,
    pub simples: Vec<SignaturePredicate>,
    pub direct_sum: bool,
    pub finite_dim: bool,
    /// Whether `pi_{-n-beta,-n-alpha}` has a finite-dimensional subrepresentation.
    pub partner_finite_dim: bool,
    pub hyperplanes: Vec<Hyperplane>,
}

pub fn classify(n: usize, alpha: ParameterPoint, beta: ParameterPoint) -> Result<StructureReport> {
    integral_difference(&alpha, &beta)?;
    let hp = hyperplanes(n, &alpha, &beta);
    let (Some(a), Some(b)) = (alpha.as_integer(), beta.as_integer()) else {
        return Ok(StructureReport {
            n,
            alpha,
            beta,
            case: StructureCase::Irreducible,
            irreducible: true,
            simples: vec![SignaturePredicate::all()],
            direct_sum: false,
            finite_dim: false,
            partner_finite_dim: false,
            hyperplanes: hp,
        });
    };
    let ni = n as i64;
    let s = a + b + ni - 1;
    let up = |j: usize| Bound { j, rel: Relation::Le, value: b + j as i64 - 1 };
    let down = |j: usize| Bound { j, rel: Relation::Ge, value: -a - ni + j as i64 };
    let (case, simples) = if s >= 1 {
        let bounds = (1..=n).flat_map(|j| [down(j), up(j)]).collect();
        (StructureCase::Case1, vec![SignaturePredicate::of(bounds)])
    } else if s == 0 {
        let simples = (1..=n)
            .map(|j| SignaturePredicate::of(vec![Bound { j, rel: Relation::Eq, value: b + j as i64 - 1 }]))
            .collect();
        (StructureCase::Case2, simples)
    } else {
        let simples = (1..=n + 1)
            .map(|i| {
                let mut bounds = Vec::new();
                if i >= 2 {
                    bounds.push(down(i - 1));
                }
                if i <= n {
                    bounds.push(up(i));
                }
                SignaturePredicate::of(bounds)
            })
            .collect();
        (if s == -1 { StructureCase::Case3 } else { StructureCase::Case4 }, simples)
    };
    Ok(StructureReport {
        n,
        alpha,
        beta,
        case,
        irreducible: false,
        simples,
        direct_sum: case == StructureCase::Case3,
        finite_dim: case == StructureCase::Case1,
        // the partner's alpha + beta + n - 1 is -s - n
        partner_finite_dim: -s - ni >= 1,
        hyperplanes: hp,
    })
}

/// Window nodes of `p` closed under every present edge (targets outside the
/// window are tested against the predicate directly).
pub fn is_closed(lat: &Lattice, p: &SignaturePredicate) -> bool {
    lat.edges
        .iter()
        .filter(|e| p.contains(&lat.nodes[e.from]))
        .all(|e| p.contains(&lat.target(e)))
}

/// Every pair of window nodes of `p` is joined by a path of window edges.
pub fn is_strongly_connected(lat: &Lattice, p: &SignaturePredicate) -> bool {
    let members: Vec<usize> = (0..lat.nodes.len()).filter(|&i| p.contains(&lat.nodes[i])).collect();
    let Some(&start) = members.first() else { return false };
    let mut fwd: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut bwd: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in &lat.edges {
        if let Some(t) = lat.node_index(&lat.target(e)) {
            fwd.entry(e.from).or_default().push(t);
            bwd.entry(t).or_default().push(e.from);
        }
    }
    let reach = |adj: &BTreeMap<usize, Vec<usize>>| -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in adj.get(&x).into_iter().flatten() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    };
    let (f, b) = (reach(&fwd), reach(&bwd));
    members.iter().all(|i| f.contains(i) && b.contains(i))
}

/// Consistency of a structure report with the lattice on its window.
pub fn check_structure(rep: &StructureReport, lat: &Lattice) -> Report {
    let mut r = Report::new("structure");
    let n = rep.n;
    for k in &lat.nodes {
        for j in 1..=n {
            let dom_up = k.shifted(j, 1).is_dominant();
            let dom_down = k.shifted(j, -1).is_dominant();
            let hp = |sign: char| {
                rep.hyperplanes
                    .iter()
                    .any(|h| h.j == j && h.sign == sign && h.level == Some(k.0[j - 1]))
            };
            let mut idx = k.0.clone();
            idx.push(j as i64);
            r.push(Check::new("up edge iff off L+", idx.clone(), lat.has_edge(k, j, Direction::Up) == (dom_up && !hp('+'))));
            r.push(Check::new("down edge iff off L-", idx, lat.has_edge(k, j, Direction::Down) == (dom_down && !hp('-'))));
        }
    }
    for (i, p) in rep.simples.iter().enumerate() {
        let idx = vec![i as i64];
        let members = lat.nodes.iter().filter(|k| p.contains(k)).count();
        r.push(Check::new("simple is nonempty", idx.clone(), members > 0).with_detail(p.to_string()));
        r.push(Check::new("simple is closed", idx.clone(), is_closed(lat, p)).with_detail(p.to_string()));
        r.push(Check::new("simple is strongly connected", idx, is_strongly_connected(lat, p)).with_detail(p.to_string()));
    }
    if !rep.irreducible {
        for (a, p) in rep.simples.iter().enumerate() {
            for (b, q) in rep.simples.iter().enumerate().skip(a + 1) {
                let overlap = lat.nodes.iter().any(|k| p.contains(k) && q.contains(k));
                r.push(Check::new("simples are disjoint", vec![a as i64, b as i64], !overlap));
            }
        }
        let covered = lat.nodes.iter().all(|k| rep.simples.iter().any(|p| p.contains(k)));
        r.push(Check::new("direct sum iff simples cover the window", vec![], covered == rep.direct_sum));
        let bounded = rep.simples.iter().any(|p| p.is_bounded(n));
        r.push(Check::new("finite-dimensional iff a bounded simple", vec![], bounded == rep.finite_dim));
    }
    r.push(Check::new("at most one of the pair is finite-dimensional", vec![], !(rep.finite_dim && rep.partner_finite_dim)));
    r
}

/// The submodules visible on the window as intersections of the half-spaces
/// `{k_j <= beta+j-1}` and `{k_j >= -alpha-n+j}`, deduplicated by their window nodes.
/// Each is returned together with whether it is closed under the present edges.
pub fn submodule_enumerate(rep: &StructureReport, lat: &Lattice) -> Vec<(SignaturePredicate, bool)> {
    let mut family = Vec::new();
    if let (Some(a), Some(b)) = (rep.alpha.as_integer(), rep.beta.as_integer()) {
        let n = rep.n as i64;
        for j in 1..=rep.n {
            family.push(Bound { j, rel: Relation::Le, value: b + j as i64 - 1 });
            family.push(Bound { j, rel: Relation::Ge, value: -a - n + j as i64 });
        }
    }
    let mut seen: BTreeMap<Vec<usize>, SignaturePredicate> = BTreeMap::new();
    for mask in 0u32..(1 << family.len()) {
        let bounds: Vec<Bound> = (0..family.len()).filter(|i| mask >> i & 1 == 1).map(|i| family[i]).collect();
        let p = SignaturePredicate::of(bounds);
        let nodes: Vec<usize> = (0..lat.nodes.len()).filter(|&i| p.contains(&lat.nodes[i])).collect();
        let p = if nodes.is_empty() { SignaturePredicate::none() } else { p };
        seen.entry(nodes)
            .and_modify(|q| {
                if p.bounds.len() < q.bounds.len() {
                    *q = p.clone()
                }
            })
            .or_insert(p);
    }
    seen.entry(vec![]).or_insert_with(SignaturePredicate::none);
    let mut out: Vec<(SignaturePredicate, bool)> = seen.into_values().map(|p| {
        let closed = is_closed(lat, &p);
        (p, closed)
    }).collect();
    out.sort();
    out
}
