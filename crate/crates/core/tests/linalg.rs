use proptest::prelude::*;
use qmatball::linalg::*;
use qmatball::scalars::ScalarExpr;

fn int(n: i64) -> ScalarExpr {
    ScalarExpr::int(n)
}

#[test]
fn zero_matrix_has_full_kernel() {
    assert_eq!(kernel(&CoordMatrix::zeros(2, 2)).len(), 2);
}

#[test]
fn identity_has_empty_kernel() {
    assert!(kernel(&CoordMatrix::identity(3)).is_empty());
}

#[test]
fn rank_one_kernel() {
    let s = ScalarExpr::s_pow(1);
    let m = CoordMatrix::from_rows(vec![vec![int(1), s.clone()], vec![s.clone(), s.mul(&s)]]);
    let k = kernel(&m);
    assert_eq!(k, vec![vec![s.neg(), int(1)]]);
}

#[test]
fn span_coordinates() {
    let b = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]];
    assert_eq!(coords_in_span(&b[0], &b).unwrap(), Some(vec![int(1), int(0)]));
    assert_eq!(coords_in_span(&[int(0), int(0), int(0)], &b).unwrap(), Some(vec![int(0), int(0)]));
    assert_eq!(coords_in_span(&[int(0), int(0), int(1)], &b).unwrap(), None);
    let dep = vec![b[0].clone(), b[0].clone()];
    assert!(coords_in_span(&b[1], &dep).is_err());
}

fn entry() -> impl Strategy<Value = ScalarExpr> {
    (-3i64..4, -2i32..3).prop_map(|(c, e)| ScalarExpr::int(c).mul(&ScalarExpr::s_pow(e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn rank_nullity_and_kernel(rows in 1usize..4, cols in 1usize..5, seed in proptest::collection::vec(entry(), 16)) {
        let data: Vec<Vec<ScalarExpr>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * cols + j].clone()).collect()).collect();
        let m = CoordMatrix::from_rows(data);
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.len(), cols);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(kernel(&m), k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn det_multiples_reduce(idx in 0usize..10, k in 0i64..3) {
        use qmatball::qmatrix::{LocalizedVector, QMatrix, QPolynomial};
        let alg = QMatrix::new(2);
        let ms: Vec<_> = (0..=2).flat_map(|d| alg.monomials_of_degree(d)).collect();
        let x = QPolynomial::monomial(ms[idx % ms.len()].clone(), ScalarExpr::one());
        let mut p = x.clone();
        for _ in 0..k {
            p = alg.mul(&alg.det(), &p);
        }
        // x * det^k * det^{-k-1} = x * det^{-1}
        let r = reduce_det(&alg, &LocalizedVector::new(p, k + 1)).unwrap();
        prop_assert_eq!(r, LocalizedVector::new(x, 1));
    }
}
