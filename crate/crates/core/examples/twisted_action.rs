//! The action on the localized quantum matrix algebra, untwisted and twisted.

use qmatball::action::{Rep, Untwisted};
use qmatball::parse::{parse_poly, parse_word};
use qmatball::qmatrix::QMatrix;
use qmatball::scalars::{ParameterPoint, Twist};

fn main() -> qmatball::Result<()> {
    let alg = QMatrix::new(2);
    let base = Untwisted::new(alg.clone());
    let x = parse_poly(&alg, "z[2,2]")?;
    let w = parse_word("E2")?;
    for (name, rep) in [
        ("untwisted", Rep::untwisted(base.clone())),
        ("symbolic d=0", Rep::twisted(base.clone(), Twist::symbolic(0))),
        ("alpha = -1/2, beta = -3/2", Rep::twisted(base.clone(), Twist::concrete(ParameterPoint::ratio(-1, 2), ParameterPoint::ratio(-3, 2)))),
    ] {
        println!("{}: E2 z22 = {}", name, alg.format_loc(&rep.act(&w, &x)?));
    }

    // n = 1: E z^k = q^{k-beta-1/2} [beta-k]_q z^{k+1}
    let alg = QMatrix::new(1);
    let rep = Rep::twisted(Untwisted::new(alg.clone()), Twist::symbolic(0));
    for k in 0..3 {
        let x = parse_poly(&alg, &format!("z[1,1]^{}", k))?;
        println!("n=1: E z^{} = {}", k, alg.format_loc(&rep.act(&parse_word("E1")?, &x)?));
    }
    Ok(())
}
