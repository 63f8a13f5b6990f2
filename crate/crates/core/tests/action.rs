use qmatball::action::*;
use qmatball::parse::parse_poly;
use qmatball::qmatrix::*;
use qmatball::scalars::*;
use qmatball::uqsl::*;
use std::sync::Arc;

fn setup(n: usize) -> (Arc<QMatrix>, Arc<Untwisted>) {
    let alg = QMatrix::new(n);
    let base = Untwisted::new(alg.clone());
    (alg, base)
}

fn lv(alg: &QMatrix, s: &str) -> LocalizedVector {
    parse_poly(alg, s).unwrap()
}

#[test]
fn f2_on_z22_is_sqrt_q() {
    let (alg, base) = setup(2);
    let r = Rep::untwisted(base);
    let out = r.act(&UWord::f(2), &lv(&alg, "z[2,2]")).unwrap();
    assert!(alg.loc_equal(&out, &lv(&alg, "s")));
}

#[test]
fn e2_on_z11() {
    let (alg, base) = setup(2);
    let r = Rep::untwisted(base);
    let out = r.act(&UWord::e(2), &lv(&alg, "z[1,1]")).unwrap();
    assert!(alg.loc_equal(&out, &lv(&alg, "-s^-1*z[1,2]*z[2,1]")));
}

#[test]
fn f2_on_inverse_det() {
    let (alg, base) = setup(2);
    let r = Rep::untwisted(base);
    let out = r.act(&UWord::f(2), &lv(&alg, "det^-1")).unwrap();
    assert!(alg.loc_equal(&out, &lv(&alg, "-s^5*z[1,1]*det^-2")));
}

#[test]
fn weights_of_simple_vectors() {
    let (alg, base) = setup(2);
    let r = Rep::twisted(base, Twist::symbolic(3));
    let one = lv(&alg, "1");
    assert_eq!(r.vector_weight(&one).unwrap(), vec![0, 3, 0]);
    assert_eq!(r.vector_weight(&lv(&alg, "z[1,1]")).unwrap(), vec![1, 3, 1]);
}

#[test]
fn k0_word_exponents() {
    let w = k0_word(3);
    let (word, _) = w.terms().next().unwrap();
    let counts: Vec<usize> = (1..=5).map(|i| word.iter().filter(|g| **g == UGen::K(i)).count()).collect();
    assert_eq!(counts, vec![1, 2, 3, 2, 1]);
}

#[test]
fn action_respects_localized_equality() {
    let (alg, base) = setup(2);
    for r in [Rep::untwisted(base.clone()), Rep::twisted(base.clone(), Twist::symbolic(1))] {
        let a = lv(&alg, "z[1,2]");
        let b = alg.raise_det_power(&a, 2);
        for g in [UGen::E(2), UGen::F(2), UGen::E(1), UGen::F(3), UGen::K(2)] {
            let x = r.act_gen(g, &a).unwrap();
            let y = r.act_gen(g, &b).unwrap();
            assert!(alg.loc_equal(&x, &y), "{:?}", g);
        }
    }
}

#[test]
fn module_algebra_rule() {
    let (alg, base) = setup(2);
    let f = lv(&alg, "z[1,1]*z[2,2] + z[2,1]");
    let g = lv(&alg, "z[1,2]*det^-1");
    let fg = alg.loc_mul(&f, &g);
    for i in 1..=3 {
        let e_fg = base.act_gen(UGen::E(i), &fg).unwrap();
        let rhs = alg.loc_add(
            &alg.loc_mul(&base.act_gen(UGen::E(i), &f).unwrap(), &g),
            &alg.loc_mul(&base.act_gen(UGen::K(i), &f).unwrap(), &base.act_gen(UGen::E(i), &g).unwrap()),
        );
        assert!(alg.loc_equal(&e_fg, &rhs), "E{}", i);
        let f_fg = base.act_gen(UGen::F(i), &fg).unwrap();
        let rhs = alg.loc_add(
            &alg.loc_mul(&base.act_gen(UGen::F(i), &f).unwrap(), &base.act_gen(UGen::Kinv(i), &g).unwrap()),
            &alg.loc_mul(&f, &base.act_gen(UGen::F(i), &g).unwrap()),
        );
        assert!(alg.loc_equal(&f_fg, &rhs), "F{}", i);
    }
}

#[test]
fn n1_closed_form() {
    let (alg, base) = setup(1);
    // a free beta: no tie between u and v
    let t = Twist::from_exprs(ScalarExpr::u(), ScalarExpr::v(), None, TwistMode::Symbolic { d: 0 });
    let r = Rep::twisted(base, t);
    for k in 0..=5i64 {
        let x = LocalizedVector::new(QPolynomial::monomial(alg.monomial_of(&[(Gen::new(1, 1), k as u16)]), ScalarExpr::one()), 0);
        let out = r.act(&UWord::e(1), &x).unwrap();
        let coeff = ScalarExpr::s_pow(2 * k as i32 - 1)
            .mul(&ScalarExpr::v().inv().unwrap())
            .mul(&qint(QExp::beta().plus_int(-k)));
        let expect = LocalizedVector::new(
            QPolynomial::monomial(alg.monomial_of(&[(Gen::new(1, 1), k as u16 + 1)]), coeff),
            0,
        );
        assert!(alg.loc_equal(&out, &expect), "k={}", k);
    }
}
