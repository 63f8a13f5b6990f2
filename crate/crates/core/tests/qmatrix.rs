use proptest::prelude::*;
use qmatball::parse::parse_poly;
use qmatball::qmatrix::*;
use qmatball::scalars::*;

fn z(alg: &QMatrix, a: usize, b: usize) -> QPolynomial {
    alg.gen(a, b)
}

fn q(e: i32) -> ScalarExpr {
    ScalarExpr::q_pow(e)
}

#[test]
fn same_row_reorders_with_q_inverse() {
    let alg = QMatrix::new(2);
    let lhs = alg.mul(&z(&alg, 1, 2), &z(&alg, 1, 1));
    let rhs = alg.mul(&z(&alg, 1, 1), &z(&alg, 1, 2)).scale(&q(-1));
    assert_eq!(lhs, rhs);
}

#[test]
fn diagonal_swap_produces_correction() {
    let alg = QMatrix::new(2);
    let lhs = alg.mul(&z(&alg, 2, 2), &z(&alg, 1, 1));
    let corr = alg.mul(&z(&alg, 1, 2), &z(&alg, 2, 1)).scale(&q(1).sub(&q(-1)));
    let rhs = alg.mul(&z(&alg, 1, 1), &z(&alg, 2, 2)).sub(&corr);
    assert_eq!(lhs, rhs);
}

#[test]
fn antidiagonal_generators_commute() {
    let alg = QMatrix::new(2);
    assert_eq!(alg.mul(&z(&alg, 2, 1), &z(&alg, 1, 2)), alg.mul(&z(&alg, 1, 2), &z(&alg, 2, 1)));
}

#[test]
fn det_two_by_two() {
    let alg = QMatrix::new(2);
    let expect = parse_poly(&alg, "z[1,1]*z[2,2] - q*z[1,2]*z[2,1]").unwrap();
    assert_eq!(expect.det_power, 0);
    assert_eq!(alg.det(), expect.poly);
}

#[test]
fn det_is_central() {
    for n in 2..=3 {
        let alg = QMatrix::new(n);
        let d = alg.det();
        for a in 1..=n {
            for b in 1..=n {
                let g = z(&alg, a, b);
                assert_eq!(alg.mul(&d, &g), alg.mul(&g, &d), "n={} z[{},{}]", n, a, b);
            }
        }
    }
}

#[test]
fn graded_dimensions() {
    for n in 2..=3 {
        let alg = QMatrix::new(n);
        for j in 0..=4 {
            assert_eq!(alg.monomials_of_degree(j).len(), dim_graded(n, j));
        }
    }
    assert_eq!(dim_graded(2, 3), 20);
    assert_eq!(dim_graded(3, 2), 45);
}

/// All defining relations, for every ordered pair of generators.
#[test]
fn defining_relations_hold() {
    for n in 2..=3 {
        let alg = QMatrix::new(n);
        let qq = q(1).sub(&q(-1));
        for a1 in 1..=n {
            for b1 in 1..=n {
                for a2 in 1..=n {
                    for b2 in 1..=n {
                        let x = z(&alg, a1, b1);
                        let y = z(&alg, a2, b2);
                        let xy = alg.mul(&x, &y);
                        let yx = alg.mul(&y, &x);
                        if a1 == a2 && b1 < b2 || b1 == b2 && a1 < a2 {
                            assert_eq!(xy, yx.scale(&q(1)));
                        } else if b1 < b2 && a1 > a2 {
                            assert_eq!(xy, yx);
                        } else if b1 < b2 && a1 < a2 {
                            let c = alg.mul(&z(&alg, a1, b2), &z(&alg, a2, b1)).scale(&qq);
                            assert_eq!(xy.sub(&yx), c);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn localized_equality_cross_multiplies() {
    let alg = QMatrix::new(2);
    let one = LocalizedVector::new(alg.one(), 0);
    let d_over_d = LocalizedVector::new(alg.det(), 1);
    assert!(alg.loc_equal(&one, &d_over_d));
    let x = parse_poly(&alg, "z[1,1]*det^-1 + z[2,2]*det^-1").unwrap();
    assert_eq!(alg.grade(&x), Some(-1));
}

#[test]
fn text_form_round_trips() {
    let alg = QMatrix::new(2);
    let x = parse_poly(&alg, "(s^2+1)*z[2,2]*z[1,1]*det^-1 - 3/2*u*z[1,2]^2*det^-1 + minor(1,2;1,2)*det^-1").unwrap();
    let back = parse_poly(&alg, &alg.format_loc(&x)).unwrap();
    assert!(alg.loc_equal(&x, &back));
}

fn word(n: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec((1..=n, 1..=n).prop_map(|(a, b)| Gen::new(a, b)), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Straightening is confluent: the normal form of a word does not depend on
    /// how it is split into products.
    #[test]
    fn normal_forms_are_associative(w1 in word(3), w2 in word(3), w3 in word(3)) {
        let alg = QMatrix::new(3);
        let a = alg.normal_form(&w1).unwrap();
        let b = alg.normal_form(&w2).unwrap();
        let c = alg.normal_form(&w3).unwrap();
        let left = alg.mul(&alg.mul(&a, &b), &c);
        let right = alg.mul(&a, &alg.mul(&b, &c));
        prop_assert_eq!(&left, &right);
        let whole: Vec<Gen> = w1.iter().chain(w2.iter()).chain(w3.iter()).cloned().collect();
        prop_assert_eq!(alg.normal_form(&whole).unwrap(), left);
    }
}
