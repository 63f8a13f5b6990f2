//! The intertwiner between pi_{alpha,beta} and pi_{-n-beta,-n-alpha}.

use qmatball::equivalence::{a_coeff, canonicalize, intertwine_verify, partner, poles_in_u};
use qmatball::isotypic::Signature;
use qmatball::scalars::{ParameterPoint, Twist};

fn main() -> qmatball::Result<()> {
    let (a, b) = (ParameterPoint::ratio(1, 2), ParameterPoint::ratio(-1, 2));
    let class: Vec<String> = partner(2, a, b).members.iter().map(|(x, y)| format!("({}, {})", x, y)).collect();
    println!("class of ({}, {}): {}", a, b, class.join(" ~ "));
    let c = canonicalize(ParameterPoint::int(3), ParameterPoint::int(1))?;
    println!("(3, 1) = ({}, {}) shifted by {}", c.alpha, c.beta, c.shift);
    for k in [[1, 0], [1, 1], [2, 2]] {
        let e = a_coeff(&Signature(k.to_vec()), &Twist::symbolic(0))?;
        let poles: Vec<String> = poles_in_u(&e, 8).poles.iter().map(|p| format!("alpha = {} (order {})", p.alpha, p.order)).collect();
        println!("a{:?} = {}\n  poles at {}", k, e, poles.join(", "));
    }
    println!("{}", intertwine_verify(1, 0, 3, 1)?.summary());
    Ok(())
}
