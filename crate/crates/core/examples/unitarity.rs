//! Series labels and invariant Hermitian forms at sample parameters.

use qmatball::scalars::ParameterPoint;
use qmatball::transitions::SignaturePredicate;
use qmatball::unitarity::{classify_series, q_samples, unitary_submodules, FormSolver};

fn main() -> qmatball::Result<()> {
    let solver = FormSolver::new(2);
    let s0 = &q_samples()[1];
    for (a, b) in [(ParameterPoint::ratio(-1, 2), ParameterPoint::ratio(-3, 2)), (ParameterPoint::ratio(-1, 2), ParameterPoint::ratio(-1, 2))] {
        let f = solver.solve(a, b, 2, &SignaturePredicate::all(), s0)?;
        println!("({}, {}): {}, positive form: {}", a, b, classify_series(2, a, b)?, f.feasible);
        for (k, c) in f.c.iter().take(4) {
            println!("  c{} = {:.6}", k, c);
        }
    }
    let (a, b) = (ParameterPoint::int(0), ParameterPoint::int(-1));
    for s in unitary_submodules(2, a, b)? {
        println!("(0, -1) on {}: positive {}", s, solver.solve(a, b, 2, &s, s0)?.feasible);
    }
    Ok(())
}
