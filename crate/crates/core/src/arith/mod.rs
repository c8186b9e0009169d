//! Exact arithmetic tower: Q -> Q[a] -> Q(a) -> Q(a)[x] -> Q(a)(x).
//!
//! Every level has a unique canonical form, so structural equality is
//! mathematical equality and identities are decided by `==`.

pub mod alpha;
pub mod expr;
pub mod linsolve;
mod modp;
pub mod poly;
pub mod ring;
pub mod specialize;
pub mod xrat;

pub use alpha::{AlphaPoly, AlphaRat};
pub use expr::{format_nh, format_poly, parse_alpha, parse_nh, parse_poly, parse_xrat, NHPoly};
pub use poly::Poly;
pub use ring::{parse_rational, rat, rat_int, Field, Rational, Ring};
pub use specialize::{alpha_specialize, QRatFn};
pub use xrat::{xgcd, xlcm, XPoly, XRat};

/// Operator sugar for types that already implement [`Ring`] (and [`Field`]).
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $crate::arith::Ring::plus(self, rhs)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::arith::Ring::plus(&self, &rhs)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $crate::arith::Ring::minus(self, rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::arith::Ring::minus(&self, &rhs)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $crate::arith::Ring::times(self, rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::arith::Ring::times(&self, &rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::arith::Ring::negate(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::arith::Ring::negate(&self)
            }
        }
    };
}

macro_rules! impl_field_ops {
    ($t:ty) => {
        impl std::ops::Div<&$t> for &$t {
            type Output = $t;
            fn div(self, rhs: &$t) -> $t {
                $crate::arith::Field::divide(self, rhs)
            }
        }
        impl std::ops::Div for $t {
            type Output = $t;
            fn div(self, rhs: $t) -> $t {
                $crate::arith::Field::divide(&self, &rhs)
            }
        }
    };
}

pub(crate) use impl_field_ops;
pub(crate) use impl_ring_ops;
