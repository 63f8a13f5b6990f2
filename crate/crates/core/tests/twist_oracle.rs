//! pi(xi) f = (xi . (f det^alpha t^(alpha+beta))) t^-(alpha+beta) det^-alpha, expanded
//! through the iterated coproduct with the factor rules for det^alpha and t^lambda.

use qmatball::action::*;
use qmatball::qmatrix::*;
use qmatball::scalars::*;
use qmatball::uqsl::*;

/// `X(det^alpha) = coeff * extra * det^{alpha + shift}`.
fn on_det(g: Option<UGen>, alg: &QMatrix, n: usize) -> Option<(ScalarExpr, QPolynomial, i64)> {
    let u = ScalarExpr::u();
    let one = ScalarExpr::one();
    let q2 = ScalarExpr::q_pow(2);
    match g {
        None => Some((one, alg.one(), 0)),
        Some(UGen::K(k)) if k == n => Some((u.mul(&u), alg.one(), 0)),
        Some(UGen::Kinv(k)) if k == n => Some((u.mul(&u).inv().unwrap(), alg.one(), 0)),
        Some(UGen::K(_)) | Some(UGen::Kinv(_)) => Some((one, alg.one(), 0)),
        Some(UGen::E(k)) if k == n => {
            let c = ScalarExpr::s_pow(1).neg().mul(&one.sub(&u.mul(&u))).div(&one.sub(&q2)).unwrap();
            Some((c, alg.gen(n, n), 0))
        }
        Some(UGen::F(k)) if k == n => {
            let c = ScalarExpr::s_pow(1)
                .mul(&one.sub(&u.mul(&u).inv().unwrap()))
                .div(&one.sub(&q2.inv().unwrap()))
                .unwrap();
            let m = if n == 1 { alg.one() } else { alg.leading_minor(n - 1) };
            Some((c, m, -1))
        }
        _ => None,
    }
}

/// `X(t^lambda) = coeff * extra * t^lambda` with `q^lambda = u v`.
fn on_t(g: Option<UGen>, alg: &QMatrix, n: usize) -> Option<(ScalarExpr, QPolynomial)> {
    let ql = ScalarExpr::u().mul(&ScalarExpr::v());
    let one = ScalarExpr::one();
    match g {
        None => Some((one, alg.one())),
        Some(UGen::K(k)) if k == n => Some((ql.inv().unwrap(), alg.one())),
        Some(UGen::Kinv(k)) if k == n => Some((ql, alg.one())),
        Some(UGen::K(_)) | Some(UGen::Kinv(_)) => Some((one, alg.one())),
        Some(UGen::E(k)) if k == n => {
            let c = ScalarExpr::s_pow(-3)
                .mul(&one.sub(&ql.mul(&ql).inv().unwrap()))
                .div(&one.sub(&ScalarExpr::q_pow(-2)))
                .unwrap();
            Some((c, alg.gen(n, n)))
        }
        _ => None,
    }
}

fn single(w: &[UGen]) -> Option<UGen> {
    assert!(w.len() <= 1);
    w.first().copied()
}

fn oracle(base: &Untwisted, g: UGen, x: &LocalizedVector) -> LocalizedVector {
    let alg = base.alg();
    let n = base.n();
    let d1 = coproduct(&UWord::gen(g));
    let mut out = LocalizedVector::zero();
    for ((a, rest), c) in &d1.terms {
        // (Δ ⊗ id) Δ: split the first leg again
        let d2 = coproduct(&UWord::word(a.clone(), ScalarExpr::one()));
        for ((a1, a2), c2) in &d2.terms {
            let mut fx = x.clone();
            for &l in a1.iter().rev() {
                fx = base.act_gen(l, &fx).unwrap();
            }
            let Some((bc, bp, bs)) = on_det(single(a2), alg, n) else { continue };
            let Some((cc, cp)) = on_t(single(rest), alg, n) else { continue };
            let poly = alg.mul(&alg.mul(&fx.poly, &bp), &cp);
            let term = LocalizedVector::new(poly, fx.det_power - bs).scale(&c.mul(c2).mul(&bc).mul(&cc));
            out = alg.loc_add(&out, &term);
        }
    }
    out
}

fn check(n: usize, deg: usize, k: i64) {
    let alg = QMatrix::new(n);
    let base = Untwisted::new(alg.clone());
    let t = Twist::from_exprs(ScalarExpr::u(), ScalarExpr::v(), None, TwistMode::Symbolic { d: 0 });
    let rep = Rep::twisted(base.clone(), t);
    for x in alg.window(deg, k) {
        for i in 1..2 * n {
            for g in [UGen::E(i), UGen::F(i), UGen::K(i), UGen::Kinv(i)] {
                let want = oracle(&base, g, &x);
                let got = rep.act_gen(g, &x).unwrap();
                assert!(alg.loc_equal(&want, &got), "n={} {} on {}", n, g, alg.format_loc(&x));
            }
        }
    }
}

#[test]
fn twisted_closed_forms_match_coproduct_expansion_n1() {
    check(1, 4, 2);
}

#[test]
fn twisted_closed_forms_match_coproduct_expansion_n2() {
    check(2, 2, 1);
}

#[test]
fn twisted_closed_forms_match_coproduct_expansion_n3() {
    check(3, 1, 1);
}
