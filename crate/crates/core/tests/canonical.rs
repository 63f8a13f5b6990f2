use proptest::prelude::*;
use qmatball::canonical::*;
use qmatball::isotypic::Signature;
use qmatball::qmatrix::QMatrix;
use qmatball::scalars::ScalarExpr;
use qmatball::uqsl::{
    ad_left, ad_left_chain, ad_left_gen, ad_left_via_coproduct, cartan_qbracket, k_range, UGen, UWord,
};

fn q(e: i32) -> ScalarExpr {
    ScalarExpr::q_pow(e)
}

fn assert_all(r: &qmatball::report::Report) {
    let bad: Vec<_> = r.failures().collect();
    assert!(bad.is_empty(), "{}: {:?}", r.summary(), bad);
}

#[test]
fn small_f_and_s() {
    for j in 1..=4 {
        assert_eq!(build_fmj(j, j).unwrap(), UWord::one());
        assert_eq!(build_srt(j, j).unwrap(), UWord::one());
    }
    for j in 2..=4 {
        assert_eq!(build_fmj(j - 1, j).unwrap(), fk(j - 1));
        assert_eq!(build_srt(j - 1, j).unwrap(), fk(j));
    }
    assert!(build_fmj(3, 2).is_err());
    assert!(build_fmj(0, 2).is_err());
    assert!(build_gmj(2, 2).is_err());
}

#[test]
fn f13_unrolls_once() {
    let chain = ad_left_gen(UGen::F(2), &fk(1));
    let kf = UWord::k(2).mul(&cartan_qbracket(2, 2, &q(1))).scale(&q(1));
    let expect = fk(2).mul(&fk(1)).sub(&chain.mul(&kf));
    assert_eq!(build_fmj(1, 3).unwrap(), expect);
}

#[test]
fn left_adjoint_closed_forms() {
    let seeds = [fk(1), UWord::e(2), UWord::k(1).mul(&UWord::f(2)), UWord::one()];
    for g in [UGen::E(1), UGen::F(1), UGen::K(2), UGen::Kinv(1), UGen::E(2), UGen::F(2)] {
        for b in &seeds {
            let a = UWord::gen(g);
            assert_eq!(ad_left_gen(g, b), ad_left_via_coproduct(&a, b), "{} on {}", g, b);
        }
    }
    // ad_x(1) = counit(x)
    assert!(ad_left_gen(UGen::F(1), &UWord::one()).is_zero());
}

fn gen_strategy() -> impl Strategy<Value = UGen> {
    (0..4usize, 1..=3usize).prop_map(|(t, i)| match t {
        0 => UGen::E(i),
        1 => UGen::F(i),
        2 => UGen::K(i),
        _ => UGen::Kinv(i),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn left_adjoint_is_a_homomorphism(a in proptest::collection::vec(gen_strategy(), 1..3),
                                      b in proptest::collection::vec(gen_strategy(), 0..3)) {
        let aw = UWord::word(a.clone(), ScalarExpr::one());
        let bw = UWord::word(b, ScalarExpr::one());
        prop_assert_eq!(ad_left_via_coproduct(&aw, &bw), ad_left_chain(&a, &bw));
        prop_assert_eq!(ad_left(&aw, &bw), ad_left_chain(&a, &bw));
    }
}

#[test]
fn kappa_values() {
    let k = Signature(vec![3, 1, 0]);
    assert_eq!(kminus_eigenvalue(3, 3, 2, &k), ScalarExpr::one());
    // base case of the FG induction: q^h [h]_q with h = k_m - k_{m+1}
    for m in 1..=2 {
        let h = k.0[m - 1] - k.0[m];
        assert_eq!(kminus_eigenvalue(m + 1, m, m, &k), q(h as i32).mul(&qint_int(h)));
    }
    // weight 0: K_-(3,1,2) = q K_1K_2[H_1+H_2+1] K_2[H_2]
    let zero = Signature::zero(3);
    assert!(kminus_eigenvalue(3, 1, 2, &zero).is_zero());
    assert_eq!(kminus_eigenvalue(3, 1, 1, &zero), q(1).mul(&qint_int(1)));
    assert_eq!(k_eigenvalue(&k_factor(3, 2, 2), &[0, 0]).unwrap(), q(1).mul(&qint_int(1)));
}

#[test]
fn pq_examples() {
    for n in 1..=3 {
        assert_eq!(pq_entry(PqSign::Plus, n, n, 1), UWord::e(n));
        let seed = UWord::word(vec![UGen::K(n), UGen::F(n)], ScalarExpr::one());
        assert_eq!(pq_entry(PqSign::Minus, n, n, 1), seed);
    }
    let corner = ad_left_gen(UGen::E(1), &UWord::e(2));
    assert_eq!(pq_entry(PqSign::Plus, 2, 1, 1), corner);
    assert_eq!(pq_basis(PqSign::Plus, 3).len(), 3);
}

#[test]
fn pq_is_a_weight_module() {
    assert_all(&check_pq(2, 1).unwrap());
}

#[test]
fn k_words() {
    assert_eq!(k_factor(3, 3, 2), UWord::one());
    assert_eq!(k_minus(2, 1, 1), k_range(1, 1).mul(&cartan_qbracket(1, 1, &q(0))));
    let shifted = shift_word(&fk(1), 3);
    assert_eq!(shifted, fk(4));
}

#[test]
fn lemmas_hold_for_n3() {
    let ctx = LemmaContext::new(3, 2, 0);
    assert_all(&check_l1(&ctx).unwrap());
    assert_all(&check_l2(&ctx).unwrap());
    assert_all(&check_g(&ctx).unwrap());
    assert_all(&check_fg(&ctx, 2).unwrap());
}

#[test]
fn lemma_g_for_n4() {
    let ctx = LemmaContext::new(4, 2, 0);
    assert_all(&check_g(&ctx).unwrap());
}

#[test]
fn lmin_readings() {
    for n in 3..=4 {
        let alg = QMatrix::new(n);
        assert_all(&check_lmin(&alg, false).unwrap());
        assert!(!check_lmin(&alg, true).unwrap().passed());
    }
}

#[test]
fn fg_base_case_by_hand() {
    // F_1K_1 z_11 = q^{1/2} q [1]_q z_21
    let alg = QMatrix::new(2);
    let ctx = LemmaContext::new(2, 1, 0);
    let vh = qmatball::isotypic::vh_vector(&alg, &Signature(vec![1, 0])).unwrap();
    let y = ctx.rep.act(&fk(1), &vh).unwrap();
    let z21 = alg.gen(2, 1);
    let expect = qmatball::qmatrix::LocalizedVector::new(z21.scale(&ScalarExpr::s_pow(1).mul(&q(1))), 0);
    assert!(alg.loc_equal(&y, &expect), "{}", alg.format_loc(&y));
}
