//! Images of Q(a)[x] in F_p[x] under `a -> a0`, used to certify that two
//! polynomials are coprime without running a fraction-free remainder sequence.
//!
//! If the leading coefficients survive the specialization and every
//! coefficient has a denominator that is a unit at `(p, a - a0)`, a monic common
//! factor over Q(a) maps to a common factor of the same degree, so the image
//! gcd degree bounds the true gcd degree from above.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::alpha::{AlphaPoly, AlphaRat};
use super::ring::Rational;
use super::xrat::XPoly;

const P: u64 = (1 << 61) - 1;
const A0: u64 = 1_000_003;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn int_mod(n: &BigInt) -> u64 {
    let r = n % BigInt::from(P);
    let r = if r < BigInt::zero() {
        r + BigInt::from(P)
    } else {
        r
    };
    r.to_u64().expect("reduced below p")
}

fn rational_mod(r: &Rational) -> Option<u64> {
    let d = int_mod(r.denom());
    (d != 0).then(|| mul(int_mod(r.numer()), inv(d)))
}

fn alpha_poly_mod(p: &AlphaPoly) -> Option<u64> {
    let mut acc = 0;
    for c in p.coeffs().iter().rev() {
        acc = add(mul(acc, A0), rational_mod(c)?);
    }
    Some(acc)
}

fn alpha_mod(c: &AlphaRat) -> Option<u64> {
    let d = alpha_poly_mod(c.den())?;
    if d == 0 {
        return None;
    }
    Some(mul(alpha_poly_mod(c.num())?, inv(d)))
}

/// Image with the same degree, or `None` if the specialization is unlucky.
fn image(p: &XPoly) -> Option<Vec<u64>> {
    let v: Vec<u64> = p.coeffs().iter().map(alpha_mod).collect::<Option<_>>()?;
    (v.last() != Some(&0)).then_some(v)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` by a nonzero `b`.
fn rem(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let db = b.len() - 1;
    let il = inv(b[db]);
    trim(&mut a);
    while a.len() > db {
        let k = a.len() - 1;
        let q = mul(a[k], il);
        let shift = k - db;
        for (i, bi) in b.iter().enumerate() {
            a[shift + i] = sub(a[shift + i], mul(q, *bi));
        }
        trim(&mut a);
    }
    a
}

/// Degree of `gcd(image(a), image(b))`, an upper bound for the degree of
/// `gcd(a, b)` over Q(a). `None` when the specialization is unusable.
pub(crate) fn gcd_degree_bound(a: &XPoly, b: &XPoly) -> Option<usize> {
    let mut u = image(a)?;
    let mut v = image(b)?;
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_empty() {
        let r = rem(u, &v);
        u = v;
        v = r;
    }
    Some(u.len().saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_xrat;

    fn xp(s: &str) -> XPoly {
        parse_xrat(s).unwrap().num().clone()
    }

    #[test]
    fn coprime_detected() {
        assert_eq!(
            gcd_degree_bound(&xp("x^2 + 2 + 2*a"), &xp("x^3 - a")),
            Some(0)
        );
    }

    #[test]
    fn shared_factor_bounded() {
        let f = "(x^2 + 2 + 2*a)";
        let a = xp(&format!("{f}^2 * (x - 1)"));
        let b = xp(&format!("{f} * (x + a)"));
        assert_eq!(gcd_degree_bound(&a, &b), Some(2));
    }
}
