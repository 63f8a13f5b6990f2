use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use qmatball::canonical::{pq_basis, PqSign};
use qmatball::isotypic::Signature;
use qmatball::scalars::{specialize, ParameterPoint, ScalarExpr};
use qmatball::transitions::{classify, SignaturePredicate};
use qmatball::unitarity::*;
use qmatball::uqsl::star;
use std::sync::OnceLock;

fn p(n: i64, d: i64) -> ParameterPoint {
    ParameterPoint::ratio(n, d)
}

fn strange(re: Rational64) -> ParameterPoint {
    ParameterPoint::new(re, 1).unwrap()
}

fn solver() -> &'static FormSolver {
    static S: OnceLock<FormSolver> = OnceLock::new();
    S.get_or_init(|| FormSolver::new(2))
}

fn solve(a: ParameterPoint, b: ParameterPoint, restrict: &SignaturePredicate, s0: &BigRational) -> InvariantForm {
    let f = solver().solve(a, b, 2, restrict, s0).unwrap();
    assert!(f.max_recurrence_error() <= 1e-9, "{:?}", f.edges);
    f
}

#[test]
fn series_labels() {
    assert_eq!(classify_series(2, p(-1, 2), p(-3, 2)).unwrap(), SeriesLabel::PrincipalUnitary);
    assert_eq!(classify_series(2, p(-3, 2), p(-1, 2)).unwrap(), SeriesLabel::Complementary);
    assert_eq!(classify_series(2, p(-7, 4), p(-3, 4)).unwrap(), SeriesLabel::Complementary);
    let z = Rational64::from_integer(0);
    assert_eq!(classify_series(2, strange(z), strange(z)).unwrap(), SeriesLabel::Strange);
    assert_eq!(classify_series(2, p(-1, 2), p(-1, 2)).unwrap(), SeriesLabel::NotUnitarizable);
    assert_eq!(classify_series(2, p(-3, 2), p(1, 2)).unwrap(), SeriesLabel::NotUnitarizable);
    let int = |a, b| classify_series(2, ParameterPoint::int(a), ParameterPoint::int(b)).unwrap();
    assert_eq!(int(0, 0), SeriesLabel::IntegerCase(1));
    assert_eq!(int(0, -1), SeriesLabel::IntegerCase(2));
    assert_eq!(int(0, -2), SeriesLabel::IntegerCase(3));
    assert_eq!(int(0, -3), SeriesLabel::IntegerCase(4));
    assert!(classify_series(2, p(1, 2), ParameterPoint::int(0)).is_err());
}

#[test]
fn unitary_submodule_lists() {
    let int = ParameterPoint::int;
    assert!(unitary_submodules(2, int(1), int(1)).unwrap().is_empty());
    assert_eq!(unitary_submodules(2, int(0), int(0)).unwrap().len(), 1);
    assert_eq!(unitary_submodules(2, int(0), int(-1)).unwrap().len(), 2);
    assert_eq!(unitary_submodules(3, int(0), int(-3)).unwrap().len(), 4);
    assert_eq!(unitary_submodules(2, int(0), int(-5)).unwrap().len(), 3);
    assert_eq!(unitary_submodules(2, p(-1, 2), p(-3, 2)).unwrap(), vec![SignaturePredicate::all()]);
    assert!(unitary_submodules(2, p(-1, 2), p(-1, 2)).unwrap().is_empty());
}

#[test]
fn star_is_an_involution_on_pq() {
    for n in 1..=3 {
        for sign in [PqSign::Plus, PqSign::Minus] {
            for xi in pq_basis(sign, n).into_iter().flatten() {
                assert_eq!(star(&star(&xi, n), n), xi);
            }
        }
    }
}

#[test]
fn recurrence_is_one_on_the_principal_line() {
    for k in [vec![0, 0], vec![2, -1], vec![-3, -3]] {
        for j in 1..=2 {
            let r = c_recurrence(&Signature(k.clone()), j, p(-1, 2), p(-3, 2)).unwrap();
            assert!(r.is_one(), "{}", r);
            let r = c_recurrence(&Signature(k.clone()), j, p(-5, 2), p(1, 2)).unwrap();
            assert!(r.is_one(), "{}", r);
        }
    }
}

#[test]
fn recurrence_vanishing_is_reported() {
    // beta = k_j + 1 - j makes the numerator vanish
    assert!(c_recurrence(&Signature(vec![0, 0]), 1, ParameterPoint::int(0), ParameterPoint::int(0)).is_err());
    assert!(c_recurrence(&Signature(vec![0, 0]), 1, p(1, 4), p(-1, 4)).is_err());
}

proptest! {
    #[test]
    fn recurrence_sign_matches_sinh_condition(
        a in -24i64..24, d in -3i64..3, k1 in -3i64..3, dk in 0i64..3, j in 1usize..3, s in 0usize..2,
    ) {
        // a/4 with a odd keeps every factor away from zero
        let alpha = p(2 * a + 1, 4);
        let beta = alpha.shift(d);
        let k = Signature(vec![k1 + dk, k1]);
        let n = 2i64;
        let kj = k.0[j - 1];
        let x = beta.re - kj + j as i64 - 1;
        let y = alpha.re + kj + 1 + n - j as i64;
        let s0 = &q_samples()[s];
        let r = specialize(&c_recurrence(&k, j, alpha, beta).unwrap(), s0, &alpha, &beta).unwrap().to_f64();
        prop_assert!(r.1.abs() < 1e-12);
        let zero = Rational64::from_integer(0);
        prop_assert_eq!(r.0 > 0.0, (x > zero) != (y > zero));
    }
}

#[test]
fn component_forms_are_positive() {
    for k in [vec![0, 0], vec![1, -1], vec![2, 0], vec![-1, -2]] {
        for s0 in q_samples() {
            let g = solver().gram(&Signature(k.clone()), &s0).unwrap();
            assert!(is_positive_definite(&g));
            assert!(g[0][0].is_one());
        }
    }
}

#[test]
fn principal_and_complementary_are_unitary() {
    for s0 in q_samples() {
        for (a, b) in [(p(-1, 2), p(-3, 2)), (p(-3, 2), p(-1, 2)), (p(-7, 4), p(-3, 4))] {
            let f = solve(a, b, &SignaturePredicate::all(), &s0);
            assert!(f.feasible, "{} {} {:?}", a, b, f.reason);
            assert!(f.c.values().all(|&c| c > 0.0));
        }
    }
    let f = solve(p(-1, 2), p(-3, 2), &SignaturePredicate::all(), &q_samples()[0]);
    assert!(f.exact);
    assert!(f.c.values().all(|&c| c == 1.0));
    assert!(!solve(p(-7, 4), p(-3, 4), &SignaturePredicate::all(), &q_samples()[1]).exact);
}

#[test]
fn strange_series_is_unitary() {
    for s0 in q_samples() {
        for re in [Rational64::from_integer(0), Rational64::new(-5, 2)] {
            let f = solve(strange(re), strange(re), &SignaturePredicate::all(), &s0);
            assert!(f.feasible, "{:?}", f.reason);
        }
    }
}

#[test]
fn sign_violations_are_not_unitary() {
    for s0 in q_samples() {
        for (a, b) in [(p(-1, 2), p(-1, 2)), (p(-3, 2), p(1, 2)), (p(-7, 4), p(1, 4))] {
            assert_eq!(classify_series(2, a, b).unwrap(), SeriesLabel::NotUnitarizable);
            let f = solve(a, b, &SignaturePredicate::all(), &s0);
            assert!(!f.feasible);
            assert!(f.c.values().any(|&c| c < 0.0) || f.reason.unwrap().contains("not positive"));
        }
    }
}

#[test]
fn integer_cases() {
    let s0 = &q_samples()[1];
    let int = ParameterPoint::int;
    let f = solve(int(0), int(0), &SignaturePredicate::all(), s0);
    assert!(!f.feasible);
    let vs = classify(2, int(0), int(-1)).unwrap().simples;
    for simple in &vs {
        assert!(solve(int(0), int(-1), simple, s0).feasible, "{}", simple);
    }
    assert!(!solve(int(0), int(-1), &SignaturePredicate::all(), s0).feasible);
    for (a, b) in [(0, -2), (-1, -2)] {
        for simple in unitary_submodules(2, int(a), int(b)).unwrap() {
            assert!(solve(int(a), int(b), &simple, s0).feasible, "({},{}) {}", a, b, simple);
        }
    }
    // the finite-dimensional simple of case 1 is not unitary unless trivial
    let box11 = classify(2, int(1), int(1)).unwrap().simples[0].clone();
    assert!(!solve(int(1), int(1), &box11, s0).feasible);
    let box00 = classify(2, int(0), int(0)).unwrap().simples[0].clone();
    assert!(solve(int(0), int(0), &box00, s0).feasible);
}

#[test]
fn labels_and_solver_agree() {
    let z = Rational64::from_integer(0);
    let points = [
        (p(-1, 2), p(-3, 2)),
        (p(-5, 2), p(1, 2)),
        (p(1, 2), p(-5, 2)),
        (p(1, 2), p(-1, 2)),
        (p(-5, 4), p(-1, 4)),
        (strange(z), strange(Rational64::from_integer(-1))),
    ];
    for s0 in q_samples() {
        for (a, b) in points {
            let label = classify_series(2, a, b).unwrap();
            let f = solve(a, b, &SignaturePredicate::all(), &s0);
            assert_eq!(f.feasible, label.is_unitary_series(), "{} {} {}", a, b, label);
        }
    }
    let _ = ScalarExpr::one();
}
