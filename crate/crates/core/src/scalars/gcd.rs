//! Greatest common divisors in the Laurent ring `Q(i)[s±, u±, v±]`.
//!
//! Monomials are units, so every input is first shifted to a polynomial with
//! no monomial factor. The recursion picks the highest variable present, splits
//! off contents (gcds of coefficients in the remaining variables) and runs a
//! primitive pseudo-remainder sequence on the primitive parts.

use super::gauss::Gauss;
use super::laurent::{LPoly, NVARS};

/// Shift to a polynomial with no monomial factor.
pub fn strip(p: &LPoly) -> LPoly {
    p.shift(&p.min_mono().inv())
}

/// Scale so the leading (grlex-largest) coefficient is 1.
pub fn monic(p: &LPoly) -> LPoly {
    match p.leading() {
        Some((_, c)) if !c.is_one() => p.scale(&c.inv()),
        _ => p.clone(),
    }
}

/// Normalized gcd: stripped of monomials and monic. The gcd of anything with a
/// unit is `1`; `gcd(0, p)` is the normalization of `p`.
pub fn gcd(a: &LPoly, b: &LPoly) -> LPoly {
    if a.is_zero() {
        return if b.is_zero() { LPoly::zero() } else { monic(&strip(b)) };
    }
    if b.is_zero() {
        return monic(&strip(a));
    }
    if a.is_unit() || b.is_unit() {
        return LPoly::one();
    }
    let a = strip(a);
    let b = strip(b);
    if a == b {
        return monic(&a);
    }
    monic(&gcd_rec(&a, &b))
}

fn top_var(p: &LPoly) -> Option<usize> {
    (0..NVARS).rev().find(|&k| p.uses_var(k))
}

fn gcd_rec(a: &LPoly, b: &LPoly) -> LPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return LPoly::one();
    }
    let ta = top_var(a).unwrap();
    let tb = top_var(b).unwrap();
    if ta != tb {
        // the variable only occurs in one operand: fold the other into its content
        let (hi, lo, x) = if ta > tb { (a, b, ta) } else { (b, a, tb) };
        return content_with(hi, x, lo.clone());
    }
    let x = ta;
    let ca = content(a, x);
    let cb = content(b, x);
    let c = gcd_rec(&ca, &cb);
    let pa = a.div_exact_poly(&ca).expect("content divides");
    let pb = b.div_exact_poly(&cb).expect("content divides");
    let g = prs(pa, pb, x);
    monic(&c.mul(&g))
}

/// gcd of `seed` with all coefficients of `p` viewed as a polynomial in `x`.
fn content_with(p: &LPoly, x: usize, seed: LPoly) -> LPoly {
    let mut coeffs = p.to_univariate(x);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(|c| c.len());
    let mut g = seed;
    for c in coeffs {
        g = if g.is_zero() { monic(&c) } else { gcd_rec(&g, &c) };
        if g.is_constant() {
            return LPoly::one();
        }
    }
    monic(&g)
}

fn content(p: &LPoly, x: usize) -> LPoly {
    content_with(p, x, LPoly::zero())
}

fn primitive_part(p: &LPoly, x: usize) -> LPoly {
    let c = content(p, x);
    monic(&p.div_exact_poly(&c).expect("content divides"))
}

fn deg(p: &LPoly, x: usize) -> i32 {
    p.max_exp(x)
}

/// Pseudo-remainder of `a` by `b` in the variable `x`.
fn prem(a: &LPoly, b: &LPoly, x: usize) -> LPoly {
    let bc = b.to_univariate(x);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut r = a.to_univariate(x);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (k, bk) in bc.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = r[idx].sub(&lr.mul(bk));
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        while matches!(r.last(), Some(c) if c.is_zero()) {
            r.pop();
        }
    }
    LPoly::from_univariate(&r, x)
}

fn prs(a: LPoly, b: LPoly, x: usize) -> LPoly {
    let (mut a, mut b) = if deg(&a, x) >= deg(&b, x) { (a, b) } else { (b, a) };
    loop {
        if b.is_zero() {
            return primitive_part(&a, x);
        }
        if deg(&b, x) == 0 {
            return LPoly::one();
        }
        let r = prem(&a, &b, x);
        a = b;
        b = if r.is_zero() { r } else { primitive_part(&r, x) };
    }
}

/// Scalar normalizer of a Laurent polynomial (for the canonical form).
pub fn leading_coeff(p: &LPoly) -> Gauss {
    p.leading().map(|(_, c)| c.clone()).unwrap_or_else(Gauss::zero)
}
