use num_traits::Zero;
use proptest::prelude::*;
use qmatball::scalars::*;
use qmatball::Error;

fn p(s: &str) -> ScalarExpr {
    parse_scalar(s).unwrap()
}

#[test]
fn qint_two_is_s2_plus_sm2() {
    let e = qint(QExp::int(2));
    assert_eq!(e, p("s^2+s^-2"));
    assert_eq!(e.to_string(), "s^2+s^-2");
}

#[test]
fn qint_two_at_quarter() {
    let e = qint(QExp::int(2));
    let v = specialize(&e, &big(1, 2), &ParameterPoint::int(0), &ParameterPoint::int(0)).unwrap();
    assert_eq!(v, Value::Exact(Gauss::real(big(17, 4))));
}

#[test]
fn strange_unit_specializes_to_minus_i() {
    let a = ParameterPoint::new(num_rational::Rational64::from_integer(0), 1).unwrap();
    let v = specialize(&ScalarExpr::u(), &big(1, 2), &a, &ParameterPoint::int(0)).unwrap();
    assert_eq!(v, Value::Exact(-Gauss::i()));
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(ScalarExpr::one().div(&ScalarExpr::zero()), Err(Error::DivisionByZero));
    assert!(matches!(parse_scalar("1/(s-s)"), Err(Error::DivisionByZero)));
}

#[test]
fn pole_is_reported() {
    let e = p("1/(s^2-1/4)");
    let r = specialize(&e, &big(1, 2), &ParameterPoint::int(0), &ParameterPoint::int(0));
    assert_eq!(r, Err(Error::Pole));
}

#[test]
fn fractions_cancel() {
    let a = p("(s^4-1)/(s^2-1)");
    assert_eq!(a, p("s^2+1"));
    let b = p("(u^2*s^2-v^2)/(u*s-v)");
    assert_eq!(b, p("u*s+v"));
    let c = p("(u-v)*(s+u)/((s+u)*(s-v))");
    assert_eq!(c, p("(u-v)/(s-v)"));
    let q = p("(s^3*u - s*u^3)/(s^2 - u^2)");
    assert_eq!(q, p("s*u"));
}

#[test]
fn irrational_exponents_fall_back_to_floats() {
    let a = ParameterPoint::ratio(1, 3);
    let v = specialize(&ScalarExpr::u(), &big(1, 2), &a, &ParameterPoint::int(0)).unwrap();
    let (re, im) = v.to_f64();
    assert!((re - 0.25f64.powf(1.0 / 3.0)).abs() < 1e-12 && im.abs() < 1e-15);
}

#[test]
fn symbolic_twist_ties_v_to_u() {
    let t = Twist::symbolic(2);
    assert_eq!(t.q_pow(QExp::beta()), p("u*s^-4"));
    let raw = p("v/u");
    assert_eq!(t.resolve(&raw).unwrap(), ScalarExpr::s_pow(-4));
}

fn small_poly() -> impl Strategy<Value = String> {
    let term = (-3i32..4, prop::sample::select(vec!["s", "u", "v", "i", "1"]), -2i32..3)
        .prop_map(|(c, x, e)| if x == "1" || x == "i" { format!("{}*{}", c, x) } else { format!("{}*{}^{}", c, x, e) });
    prop::collection::vec(term, 1..4).prop_map(|ts| ts.join("+"))
}

fn scalar() -> impl Strategy<Value = ScalarExpr> {
    (small_poly(), small_poly()).prop_filter_map("nonzero denominator", |(a, b)| {
        parse_scalar(&format!("({})/({})", a, b)).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(x in scalar()) {
        let back = parse_scalar(&x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
        }
    }

    #[test]
    fn specialization_is_a_homomorphism(a in scalar(), b in scalar()) {
        let s0 = big(3, 7);
        let al = ParameterPoint::ratio(-1, 2);
        let be = ParameterPoint::int(1);
        let ev = |x: &ScalarExpr| specialize(x, &s0, &al, &be).ok().and_then(|v| v.exact().cloned());
        if let (Some(x), Some(y), Some(z)) = (ev(&a), ev(&b), ev(&a.mul(&b))) {
            prop_assert_eq!(&x * &y, z);
        }
        if let (Some(x), Some(y), Some(z)) = (ev(&a), ev(&b), ev(&a.add(&b))) {
            prop_assert!((&(&x + &y) - &z).re.is_zero());
        }
    }
}
