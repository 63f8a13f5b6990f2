use proptest::prelude::*;
use qmatball::canonical::build_fmj;
use qmatball::parse::{parse_poly, parse_word};
use qmatball::qmatrix::{Gen, QMatrix};
use qmatball::scalars::ScalarExpr;
use qmatball::uqsl::{ad, UGen, UWord};

#[test]
fn polynomial_examples() {
    let alg = QMatrix::new(2);
    let x = parse_poly(&alg, "z[1,1]*z[2,2]").unwrap();
    assert_eq!(x.det_power, 0);
    assert_eq!(x.poly, alg.normal_form(&[Gen::new(1, 1), Gen::new(2, 2)]).unwrap());
    let d = parse_poly(&alg, "det^-1").unwrap();
    assert_eq!(d.det_power, 1);
    assert_eq!(d.poly, alg.one());
}

#[test]
fn word_examples() {
    let w = parse_word("E2*Fmj(1,2)").unwrap();
    assert_eq!(w, UWord::e(2).mul(&build_fmj(1, 2).unwrap()));
    let w = parse_word("Kinv1*K1 + 2*E1 - s^-1*F3").unwrap();
    let want = UWord::one().add(&UWord::e(1).scale(&ScalarExpr::int(2))).sub(&UWord::f(3).scale(&ScalarExpr::s_pow(-1)));
    assert_eq!(w, want);
    assert_eq!(parse_word("ad(E1; F2)").unwrap(), ad(&UWord::e(1), &UWord::f(2)));
    assert_eq!(parse_word("(E1 + F1)*K2").unwrap(), UWord::e(1).add(&UWord::f(1)).mul(&UWord::k(2)));
}

#[test]
fn word_errors_carry_columns() {
    for (src, col) in [("E1*", "column 4"), ("E1 + G2", "column 6"), ("Fmj(1,)", "column 7"), ("E0", "column 3")] {
        match parse_word(src) {
            Err(qmatball::Error::Parse(m)) => assert!(m.contains(col), "{}: {}", src, m),
            other => panic!("{}: {:?}", src, other),
        }
    }
}

#[test]
fn builders_print_and_parse_back() {
    for (m, j) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
        let w = build_fmj(m, j).unwrap();
        assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }
}

fn gen_strategy() -> impl Strategy<Value = UGen> {
    (0u8..4, 1usize..4).prop_map(|(t, i)| match t {
        0 => UGen::E(i),
        1 => UGen::F(i),
        2 => UGen::K(i),
        _ => UGen::Kinv(i),
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(
        terms in prop::collection::vec((prop::collection::vec(gen_strategy(), 0..4), -3i64..4, -2i32..3), 1..4)
    ) {
        let mut w = UWord::zero();
        for (letters, a, e) in terms {
            let c = ScalarExpr::int(a).add(&ScalarExpr::s_pow(e));
            w = w.add(&UWord::word(letters, c));
        }
        let text = w.to_string();
        let back = parse_word(&text).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.to_string(), text);
    }
}
