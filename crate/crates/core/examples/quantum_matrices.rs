//! Normal forms, the quantum determinant and graded dimensions of the
//! quantum matrix algebra.

use qmatball::parse::parse_poly;
use qmatball::qmatrix::{binomial, Gen, QMatrix};

fn main() -> qmatball::Result<()> {
    let alg = QMatrix::new(2);
    // z22 z11 reorders with a correction term
    let p = alg.normal_form(&[Gen::new(2, 2), Gen::new(1, 1)])?;
    println!("z22*z11 = {}", alg.format_poly(&p));
    println!("det_q = {}", alg.format_poly(&alg.det()));
    let x = parse_poly(&alg, "z[1,2]*z[1,1]*det^-1")?;
    println!("parsed: {}", alg.format_loc(&x));

    for n in 2..=3 {
        let alg = QMatrix::new(n);
        let dims: Vec<String> = (0..=4)
            .map(|j| format!("{} (binomial {})", alg.monomials_of_degree(j).len(), binomial(n * n + j - 1, j)))
            .collect();
        println!("n = {}: {}", n, dims.join(", "));
    }
    Ok(())
}
