//! Prints the n = 2 plane diagrams for one point in each integral regime.

use qmatball::diagram::plane_text;
use qmatball::scalars::ParameterPoint;
use qmatball::transitions::{classify, lattice};

fn main() -> qmatball::Result<()> {
    for (a, b) in [(0, 0), (0, -1), (0, -2), (0, -3)] {
        let (alpha, beta) = (ParameterPoint::int(a), ParameterPoint::int(b));
        let rep = classify(2, alpha, beta)?;
        println!("alpha = {}, beta = {}: {:?}, {} simple pieces", a, b, rep.case, rep.simples.len());
        println!("{}", plane_text(&rep, &lattice(2, alpha, beta, 4)?)?);
    }
    Ok(())
}
