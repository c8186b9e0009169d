//! Numeric specialization of the formal parameter.

use std::fmt;

use super::poly::Poly;
use num_traits::Zero;

use super::ring::Rational;
use super::xrat::XRat;
use crate::error::Result;

/// A rational function of `x` over Q, reduced with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QRatFn {
    pub num: Poly<Rational>,
    pub den: Poly<Rational>,
}

impl QRatFn {
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QRatFn {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_exact(&g), den.div_exact(&g));
        let inv = den.lead().recip();
        QRatFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.num
                .derivative()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derivative())),
            self.den.mul(&self.den),
        )
    }

    /// Value at `x0`, or `None` at a pole.
    pub fn eval(&self, x0: &Rational) -> Option<Rational> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x0) / d)
        }
    }
}

impl fmt::Display for QRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly<Rational>| {
            let terms: Vec<String> = p
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| match k {
                    0 => format!("({c})"),
                    1 => format!("({c})*x"),
                    _ => format!("({c})*x^{k}"),
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        write!(f, "[{}]/[{}]", show(&self.num), show(&self.den))
    }
}

/// Substitutes `a = a0` into every coefficient.
///
/// Fails with [`crate::Error::DegenerateParameter`] when `a0` is a root of an
/// `a`-denominator occurring in `r`; the error names that factor.
pub fn alpha_specialize(r: &XRat, a0: &Rational) -> Result<QRatFn> {
    let spec = |p: &super::xrat::XPoly| -> Result<Poly<Rational>> {
        Ok(Poly::new(
            p.coeffs()
                .iter()
                .map(|c| c.eval(a0))
                .collect::<Result<Vec<_>>>()?,
        ))
    };
    let num = spec(r.num())?;
    let den = spec(r.den())?;
    Ok(QRatFn::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, AlphaRat, Field, XPoly};
    use crate::error::Error;

    #[test]
    fn substitutes_parameter() {
        let x_over = XRat::x().divide(&XRat::constant(AlphaRat::linear(rat(-2, 1), rat(1, 1))));
        let s = alpha_specialize(&x_over, &rat(3, 1)).unwrap();
        assert_eq!(s, QRatFn::new(Poly::var(), Poly::one()));
    }

    #[test]
    fn shifted_quadratic() {
        let f = XRat::from_poly(XPoly::new(vec![
            AlphaRat::linear(rat(2, 1), rat(2, 1)),
            AlphaRat::int(0),
            AlphaRat::int(1),
        ]));
        let s = alpha_specialize(&f, &rat(1, 2)).unwrap();
        assert_eq!(s.num.coeffs(), &[rat(3, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn pole_in_parameter_is_degenerate() {
        let f = XRat::constant(AlphaRat::linear(rat(-2, 1), rat(1, 1)).inverse());
        match alpha_specialize(&f, &rat(2, 1)) {
            Err(Error::DegenerateParameter { factor, .. }) => assert_eq!(factor, "a - 2"),
            other => panic!("expected degenerate parameter, got {other:?}"),
        }
    }
}
