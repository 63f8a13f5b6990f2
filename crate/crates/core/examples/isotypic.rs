//! Splitting graded pieces into U_q k-isotypic components.

use qmatball::action::{Rep, Untwisted};
use qmatball::isotypic::{decompose, highest_weight, vh_vector, Signature};
use qmatball::qmatrix::QMatrix;
use qmatball::scalars::Twist;

fn main() -> qmatball::Result<()> {
    let alg = QMatrix::new(2);
    let base = Untwisted::new(alg.clone());
    for (j, k) in [(2, 0), (0, 1), (3, 1)] {
        let dec = decompose(&base, j, k)?;
        let parts: Vec<String> = dec.components.iter().map(|c| format!("{} dim {}", c.signature, c.dimension())).collect();
        println!("grade {}, det power {}: {}", j, k, parts.join(", "));
    }
    let rep = Rep::twisted(base, Twist::symbolic(0));
    let k = Signature(vec![1, -1]);
    let vh = vh_vector(&alg, &k)?;
    println!("v^h{} = {}", k, alg.format_loc(&vh));
    println!("weight {:?}, expected {:?}", rep.vector_weight(&vh)?, highest_weight(&k, 0));
    Ok(())
}
