//! Named verification suites driving the checks of every module.

use crate::action::{Rep, Untwisted};
use crate::canonical::{check_fg, check_g, check_l1, check_l2, check_lmin, LemmaContext};
use crate::equivalence::{check_poles, check_recurrences, det_shift_verify, intertwine_verify, window_vectors};
use crate::error::{Error, Result};
use crate::isotypic::{decompose, highest_weight, signatures, vh_vector, weyl_dimension};
use crate::qmatrix::{binomial, Gen, QMatrix, QPolynomial};
use crate::report::{Check, Report};
use crate::scalars::{ParameterPoint, ScalarExpr, Twist};
use crate::transitions::{
    check_factorization, check_structure, classify, lattice, prop21_evaluate, window, Column, SignaturePredicate,
    TransitionContext,
};
use crate::unitarity::{classify_series, q_samples, unitary_submodules, FormSolver, InvariantForm};
use crate::uqsl::{defining_relations, UGen};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

pub const SUITES: [&str; 9] =
    ["relations", "confluence", "serre", "isotypic", "lemmas", "transitions", "prop21", "intertwiner", "unitarity"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOptions {
    pub n: usize,
    /// Signature window `|k_i| <= bound`.
    pub bound: i64,
    /// z-degree of the vector window for operator identities.
    pub degree: usize,
    pub seed: u64,
}

impl SuiteOptions {
    pub fn new(n: usize) -> SuiteOptions {
        SuiteOptions { n, bound: 2, degree: 3, seed: 0 }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Report> {
    let n = opts.n;
    if n == 0 {
        return Err(Error::Usage("n must be positive".into()));
    }
    match name {
        "relations" => check_relations(n, opts.degree, false),
        "serre" => check_relations(n, opts.degree, true),
        "confluence" => check_confluence(n, 4, opts.seed),
        "isotypic" => check_isotypic(n, opts.bound),
        "lemmas" => check_lemmas(n, opts.degree),
        "transitions" => {
            let mut r = Report::new("transitions");
            for d in 0..=1 {
                r.extend(check_factorization(&TransitionContext::new(n, d), opts.bound.min(2))?);
            }
            Ok(r)
        }
        "prop21" => check_prop21(n),
        "intertwiner" => check_intertwiner(n),
        "unitarity" => Ok(check_unitarity(n, opts.bound)?.0),
        _ => Err(Error::Usage(format!("unknown suite '{}'; expected one of {}", name, SUITES.join(", ")))),
    }
}

/// Every defining relation (or only the Serre ones) of `U_q sl_2n` kills the
/// window vectors of degree `<= max_degree`, det power `<= 1`, for the
/// untwisted and both symbolic twisted actions.
pub fn check_relations(n: usize, max_degree: usize, serre_only: bool) -> Result<Report> {
    let mut report = Report::new(if serre_only { "serre" } else { "relations" });
    let alg = QMatrix::new(n);
    let base = Untwisted::new(alg.clone());
    let vectors = window_vectors(&alg, max_degree, 1);
    let reps = [
        ("untwisted", Rep::untwisted(base.clone())),
        ("d=0", Rep::twisted(base.clone(), Twist::symbolic(0))),
        ("d=1", Rep::twisted(base.clone(), Twist::symbolic(1))),
    ];
    let rels: Vec<_> =
        defining_relations(2 * n - 1).into_iter().filter(|(name, _)| !serre_only || name.starts_with("Serre")).collect();
    for (label, rep) in &reps {
        for (name, rel) in &rels {
            let mut bad = None;
            for x in &vectors {
                if !rep.act(rel, x)?.poly.is_zero() {
                    bad = Some(alg.format_loc(x));
                    break;
                }
            }
            let c = Check::new(format!("{} {}", label, name), vec![], bad.is_none());
            report.push(match bad {
                Some(x) => c.with_detail(format!("nonzero on {}", x)),
                None => c,
            });
        }
    }
    Ok(report)
}

/// Overlap ambiguities `z_a z_b z_c` (indices decreasing) resolve to the same
/// normal form both ways, graded dimensions are binomial, and products of
/// random monomials (drawn from `seed`) associate.
pub fn check_confluence(n: usize, max_degree: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("confluence");
    let alg = QMatrix::new(n);
    let gens: Vec<Gen> = (1..=n).flat_map(|a| (1..=n).map(move |b| Gen::new(a, b))).collect();
    let single = |g: Gen| alg.gen(g.a, g.b);
    for &g1 in &gens {
        for &g2 in &gens {
            for &g3 in &gens {
                let (i1, i2, i3) = (alg.gen_index(g1), alg.gen_index(g2), alg.gen_index(g3));
                if !(i1 > i2 && i2 > i3) {
                    continue;
                }
                let left = alg.mul(&alg.normal_form(&[g1, g2])?, &single(g3));
                let right = alg.mul(&single(g1), &alg.normal_form(&[g2, g3])?);
                report.push(Check::new(
                    format!("overlap z{}{} z{}{} z{}{}", g1.a, g1.b, g2.a, g2.b, g3.a, g3.b),
                    vec![],
                    left == right,
                ));
            }
        }
    }
    for j in 0..=max_degree {
        let got = alg.monomials_of_degree(j).len();
        let want = binomial(n * n + j - 1, j);
        report.push(
            Check::new("graded dimension", vec![j as i64], got == want).with_detail(format!("{} vs {}", got, want)),
        );
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let pool: Vec<_> = (1..=2).flat_map(|j| alg.monomials_of_degree(j)).collect();
    for trial in 0..16 {
        let [a, b, c] = [0; 3].map(|_| QPolynomial::monomial(pool[rng.gen_range(0..pool.len())].clone(), ScalarExpr::one()));
        let left = alg.mul(&alg.mul(&a, &b), &c);
        let right = alg.mul(&a, &alg.mul(&b, &c));
        report.push(Check::new("random associativity", vec![trial], left == right));
    }
    Ok(report)
}

/// Decompositions of the pieces with grade `<= 3`, det power `<= 1` (n = 2
/// only, the larger pieces get slow), and highest-vector weights for
/// `|k_i| <= bound`.
pub fn check_isotypic(n: usize, bound: i64) -> Result<Report> {
    let mut report = Report::new("isotypic");
    let alg = QMatrix::new(n);
    let base = Untwisted::new(alg.clone());
    if n <= 2 {
        for k in 0..=1 {
            for j in -(n as i64) * k..=3 {
                let dec = decompose(&base, j, k)?;
                let mut got = dec.signatures();
                got.sort();
                let mut want = signatures(n, j, k);
                want.sort();
                let dims = dec.components.iter().all(|c| {
                    let w = weyl_dimension(&c.signature);
                    c.dimension() == w * w
                });
                let total: usize = dec.components.iter().map(|c| c.dimension()).sum();
                report.push(
                    Check::new("signatures and dimensions", vec![j, k], got == want && dims && total == dec.basis.len())
                        .with_detail(format!("{} components, total dimension {}", got.len(), total)),
                );
            }
        }
    }
    for d in 0..=1 {
        let rep = Rep::twisted(base.clone(), Twist::symbolic(d));
        for k in window(n, bound) {
            let vh = vh_vector(&alg, &k)?;
            let killed = (1..2 * n).filter(|&i| i != n).all(|i| base.act_gen(UGen::E(i), &vh).is_ok_and(|y| y.is_zero()));
            let weight = rep.vector_weight(&vh)?;
            report.push(
                Check::new(format!("highest vector d={}", d), k.0.clone(), killed && weight == highest_weight(&k, d))
                    .with_detail(format!("weight {:?}", weight)),
            );
        }
    }
    Ok(report)
}

pub fn check_lemmas(n: usize, degree: usize) -> Result<Report> {
    let mut report = Report::new("lemmas");
    let ctx = LemmaContext::new(n, degree, 1);
    report.extend(check_l1(&ctx)?);
    report.extend(check_l2(&ctx)?);
    report.extend(check_g(&ctx)?);
    report.extend(check_fg(&ctx, 2)?);
    if n >= 3 {
        report.extend(check_lmin(&QMatrix::new(n), false)?);
    }
    Ok(report)
}

/// The word-sum scalar against its closed form on small signatures.
pub fn check_prop21(n: usize) -> Result<Report> {
    let mut report = Report::new("prop21");
    let ctx = TransitionContext::new(n, 0);
    for k in window(n, 2).into_iter().filter(|k| k.0.iter().all(|&x| x >= 0)) {
        for j in 1..=n {
            if !k.shifted(j, 1).is_dominant() || k.0.iter().sum::<i64>() > 3 {
                continue;
            }
            let out = prop21_evaluate(&ctx, &k, j, Column::Reversed)?;
            let detail = match (&out.scalar, out.ratio_half_power()) {
                (Some(s), Some(e)) => format!("scalar {}; ratio to closed form q^({}/2)", s, e),
                (Some(s), None) => format!("scalar {}; ratio {:?}", s, out.ratio.as_ref().map(|r| r.to_string())),
                (None, _) => "not a multiple of the highest vector".to_string(),
            };
            let mut idx = k.0.clone();
            idx.push(j as i64);
            report.push(Check::new("word sum", idx, out.in_target && out.exact()).with_detail(detail));
        }
    }
    Ok(report)
}

pub fn check_intertwiner(n: usize) -> Result<Report> {
    let mut report = Report::new("intertwiner");
    let (bound, degree) = if n <= 2 { (2, 2) } else { (1, 1) };
    for d in 0..=1 {
        report.extend(check_recurrences(n, bound, &Twist::symbolic(d))?);
        report.extend(check_poles(n, bound + 1, d)?);
        report.extend(intertwine_verify(n, d, degree, 1)?);
        report.extend(det_shift_verify(n, &Twist::symbolic(d), degree, 1, false)?);
    }
    Ok(report)
}

/// One solved sample: the parameters, the restriction, and the expectation.
#[derive(Clone, Debug, Serialize)]
pub struct UnitaritySample {
    pub label: String,
    pub restrict: String,
    pub expect_feasible: bool,
    pub form: InvariantForm,
}

/// Standard samples: principal, complementary, strange, the small
/// representations at `(0, 1-n)`, and the full space at `(0, 0)`.
pub fn check_unitarity(n: usize, bound: i64) -> Result<(Report, Vec<UnitaritySample>)> {
    let mut report = Report::new("unitarity");
    let solver = FormSolver::new(n);
    let ni = n as i64;
    let half = |x: i64| ParameterPoint::ratio(x, 2);
    let strange = ParameterPoint::new(num_rational::Rational64::from_integer(0), 1)?;
    let mut cases = vec![
        (half(-1), half(1 - 2 * ni), SignaturePredicate::all(), true),
        (ParameterPoint::ratio(1 - 4 * ni, 4), ParameterPoint::ratio(-3, 4), SignaturePredicate::all(), true),
        (strange, strange, SignaturePredicate::all(), true),
        (ParameterPoint::int(0), ParameterPoint::int(0), SignaturePredicate::all(), false),
    ];
    let (a, b) = (ParameterPoint::int(0), ParameterPoint::int(1 - ni));
    for simple in unitary_submodules(n, a, b)? {
        cases.push((a, b, simple, true));
    }
    let mut samples = Vec::new();
    for (a, b, restrict, expect) in cases {
        let label = classify_series(n, a, b)?;
        for s0 in q_samples() {
            let form = solver.solve(a, b, bound, &restrict, &s0)?;
            let err = form.max_recurrence_error();
            report.push(
                Check::new(format!("{} ({}, {}) on {}", label, a, b, restrict), vec![], form.feasible == expect && err <= 1e-9)
                    .with_detail(format!(
                        "q = {}^2, feasible {}, max recurrence error {:e}{}",
                        s0,
                        form.feasible,
                        err,
                        form.reason.as_ref().map(|r| format!(", {}", r)).unwrap_or_default()
                    )),
            );
            samples.push(UnitaritySample { label: label.to_string(), restrict: restrict.to_string(), expect_feasible: expect, form });
        }
    }
    Ok((report, samples))
}

/// Structure checks on a window, used by `verify` for integral parameters.
pub fn check_structure_at(n: usize, alpha: ParameterPoint, beta: ParameterPoint, bound: i64) -> Result<Report> {
    let rep = classify(n, alpha, beta)?;
    Ok(check_structure(&rep, &lattice(n, alpha, beta, bound)?))
}

