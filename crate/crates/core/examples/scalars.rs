//! Exact scalars in s = q^{1/2}, u = q^alpha, v = q^beta and their values
//! at a sample q.

use qmatball::scalars::{big, parse_scalar, qint, specialize, ParameterPoint, QExp, Twist, Value};

fn main() -> qmatball::Result<()> {
    let x = parse_scalar("(u^2*s^2 - v^2)/(u*s - v)")?;
    println!("cancelled: {}", x);
    let two = qint(QExp::int(2));
    println!("[2]_q = {}", two);

    let s0 = big(1, 2);
    for (a, b) in [(ParameterPoint::int(0), ParameterPoint::int(0)), (ParameterPoint::ratio(1, 3), ParameterPoint::int(0))] {
        match specialize(&x, &s0, &a, &b)? {
            Value::Exact(g) => println!("at q = 1/4, alpha = {}, beta = {}: exactly {}", a, b, g),
            Value::Approx(re, im) => println!("at q = 1/4, alpha = {}, beta = {}: about {} + {}i", a, b, re, im),
        }
    }

    // the symbolic twist ties v to u: q^beta = q^alpha q^{-d}
    let t = Twist::symbolic(1);
    println!("q^beta under d = 1: {}", t.q_pow(QExp::beta()));
    let strange = ParameterPoint::new(num_rational::Rational64::from_integer(0), 1)?;
    let z = specialize(&parse_scalar("u")?, &s0, &strange, &strange)?;
    println!("q^alpha at alpha = i pi/h: {}", z.exact().expect("exact"));
    Ok(())
}
