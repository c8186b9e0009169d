use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};
/// Big rational numbers; the base field of every coefficient in the crate.
pub type Rational = num_rational::BigRational;

/// Commutative ring with unit; operations by reference.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static + Zero + One {
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_int(n: i64) -> Self;
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Panics on zero; callers check first.
    fn inverse(&self) -> Self;

    fn divide(&self, rhs: &Self) -> Self {
        self.times(&rhs.inverse())
    }
}

impl Ring for Rational {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Field for Rational {
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational");
        self.recip()
    }
}

/// Shorthand constructor used all over the model code.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Floor of a rational as a machine integer. Exponents here are tiny.
pub fn rat_floor(r: &Rational) -> i64 {
    let f = r.floor().to_integer();
    i64::try_from(f).expect("exponent out of machine range")
}

/// Parses `n`, `-n`, `n/d`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
