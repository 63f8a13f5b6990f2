//! Exact scalars: rational functions in `s = q^{1/2}`, `u = q^alpha`, `v = q^beta`
//! over the Gaussian rationals.

mod expr;
mod gauss;
pub mod gcd;
mod laurent;
mod param;
mod text;

pub use expr::ScalarExpr;
pub use gauss::{rat, ratio_to_f64, Gauss};
pub use laurent::{LPoly, Mono, NVARS, VAR_NAMES};
pub use param::{
    big, parse_rational, q_minus_qinv, qint, qint_of, rat_pow, specialize, ParameterPoint, QExp,
    Twist, TwistMode, Value,
};
pub use text::{parse_scalar, poly_to_string};
