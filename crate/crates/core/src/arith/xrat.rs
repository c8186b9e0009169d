//! Rational functions of `x` over Q(a) in canonical GCD-reduced form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::alpha::{primitive_part, AlphaPoly, AlphaRat};
use super::poly::Poly;
use super::ring::{Field, Rational, Ring};
use crate::error::{Error, Result};

/// Polynomial in `x` with Q(a) coefficients.
pub type XPoly = Poly<AlphaRat>;

type IntXPoly = Poly<AlphaPoly>;

fn alpha_lcm(a: &AlphaPoly, b: &AlphaPoly) -> AlphaPoly {
    if a.is_constant() {
        return b.clone();
    }
    if b.is_constant() {
        return a.clone();
    }
    let g = a.gcd(b);
    primitive_part(&a.mul(b).div_exact(&g))
}

/// Clears `a`-denominators: returns a polynomial over Q[a] proportional to `p`.
fn clear_alpha_denominators(p: &XPoly) -> IntXPoly {
    let l = p
        .coeffs()
        .iter()
        .fold(AlphaPoly::one(), |acc, c| alpha_lcm(&acc, c.den()));
    Poly::new(
        p.coeffs()
            .iter()
            .map(|c| c.num().mul(&l.div_exact(c.den())))
            .collect(),
    )
}

/// Divides out the Q[a]-content and scales to primitive integer form.
fn primitive_x(p: &IntXPoly) -> IntXPoly {
    let mut g: Option<AlphaPoly> = None;
    if p.coeffs().iter().any(|c| !c.is_zero() && c.is_constant()) {
        g = Some(AlphaPoly::one());
    }
    for c in p.coeffs() {
        if c.is_zero() {
            continue;
        }
        if g.as_ref().is_some_and(|g| g.is_constant()) {
            break;
        }
        g = Some(match g {
            None => c.monic(),
            Some(g) => g.gcd(c),
        });
    }
    let g = g.unwrap_or_else(AlphaPoly::one);
    let divided: IntXPoly = if g.is_constant() {
        p.clone()
    } else {
        p.map(|c| c.div_exact(&g))
    };
    // rational content across all coefficients
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in divided.coeffs() {
        for r in c.coeffs() {
            if !r.is_zero() {
                num = num.gcd(r.numer());
                den = den.lcm(r.denom());
            }
        }
    }
    if num.is_zero() {
        return divided;
    }
    let inv = Rational::new(den, num);
    divided.map(|c| c.scale(&inv))
}

fn lift(p: &IntXPoly) -> XPoly {
    p.map(|c| AlphaRat::from_poly(c.clone()))
}

/// Monic gcd in Q(a)[x] via the primitive PRS over Q[a].
pub fn xgcd(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return XPoly::one();
    }
    // common power of x first
    let la = a.low_degree().unwrap_or(0);
    let lb = b.low_degree().unwrap_or(0);
    let xk = la.min(lb);
    let strip = |p: &XPoly, k: usize| XPoly::new(p.coeffs()[k..].to_vec());
    let a = strip(a, la);
    let b = strip(b, lb);
    let bound = if a.is_constant() || b.is_constant() {
        Some(0)
    } else {
        super::modp::gcd_degree_bound(&a, &b)
    };
    let divides =
        |small: &XPoly, big: &XPoly| small.degree() == bound && big.div_rem(small).1.is_zero();
    let core = if bound == Some(0) {
        XPoly::one()
    } else if divides(&b, &a) {
        b.monic()
    } else if divides(&a, &b) {
        a.monic()
    } else {
        let mut u = primitive_x(&clear_alpha_denominators(&a));
        let mut v = primitive_x(&clear_alpha_denominators(&b));
        if u.degree() < v.degree() {
            std::mem::swap(&mut u, &mut v);
        }
        loop {
            let r = u.pseudo_rem(&v);
            if r.is_zero() {
                break lift(&v).monic();
            }
            if r.degree() == Some(0) {
                break XPoly::one();
            }
            u = v;
            v = primitive_x(&r);
        }
    };
    core.shift(xk)
}

/// Monic lcm in Q(a)[x].
pub fn xlcm(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_constant() {
        return b.monic();
    }
    if b.is_constant() {
        return a.monic();
    }
    let g = xgcd(a, b);
    a.div_exact(&g).mul(b).monic()
}

/// A rational function `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XRat {
    num: XPoly,
    den: XPoly,
}

impl XRat {
    pub fn new(num: XPoly, den: XPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    /// Full canonicalization from an arbitrary pair.
    pub(crate) fn normalize(num: XPoly, den: XPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.lead().inverse();
            return XRat {
                num: num.scale(&inv),
                den: XPoly::one(),
            };
        }
        let g = xgcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let inv = den.lead().inverse();
        XRat {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: XPoly) -> Self {
        XRat {
            num: p,
            den: XPoly::one(),
        }
    }

    pub fn constant(c: AlphaRat) -> Self {
        Self::from_poly(XPoly::constant(c))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(AlphaRat::from_rational(r))
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::from_poly(XPoly::var())
    }

    /// `x^k` for any integer `k`.
    pub fn x_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(XPoly::monomial(AlphaRat::one(), k as usize))
        } else {
            XRat {
                num: XPoly::one(),
                den: XPoly::monomial(AlphaRat::one(), (-k) as usize),
            }
        }
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    /// Sum of many terms; numerators over equal denominators are added before
    /// any reduction.
    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a XRat>) -> XRat {
        let mut groups: Vec<(XPoly, XPoly)> = Vec::new();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            match groups.iter_mut().find(|(d, _)| *d == t.den) {
                Some((_, n)) => *n = n.add(&t.num),
                None => groups.push((t.den.clone(), t.num.clone())),
            }
        }
        groups
            .into_iter()
            .map(|(d, n)| Self::normalize(n, d))
            .fold(XRat::zero(), |acc, r| acc.plus(&r))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The constant value when the function does not depend on `x`.
    pub fn as_constant(&self) -> Option<AlphaRat> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &AlphaRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        XRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn mul_x_pow(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        if k > 0 {
            // cancel against x-factors of the denominator first
            let dl = self.den.low_degree().unwrap_or(0).min(k as usize);
            let den = XPoly::new(self.den.coeffs()[dl..].to_vec());
            XRat {
                num: self.num.shift(k as usize - dl),
                den,
            }
        } else {
            let k = (-k) as usize;
            let nl = self.num.low_degree().unwrap_or(0).min(k);
            let num = XPoly::new(self.num.coeffs()[nl..].to_vec());
            XRat {
                num,
                den: self.den.shift(k - nl),
            }
        }
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return Self::from_poly(self.num.derivative());
        }
        // With g = gcd(d, d'), (n/d)' = (n' (d/g) - n (d'/g)) / (d (d/g)) is
        // already reduced: each pole order rises by exactly one.
        let dd = self.den.derivative();
        let g = xgcd(&self.den, &dd);
        let dg = self.den.div_exact(&g);
        let num = self
            .num
            .derivative()
            .mul(&dg)
            .sub(&self.num.mul(&dd.div_exact(&g)));
        if num.is_zero() {
            return Self::zero();
        }
        XRat {
            num,
            den: self.den.mul(&dg),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        XRat {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Reciprocal; `Err` on zero.
    pub fn try_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    /// Substitutes an exact value of `x` (the result still depends on `a`).
    pub fn eval_x(&self, x0: &AlphaRat) -> Result<AlphaRat> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return Err(Error::EvaluationAtPole);
        }
        Ok(self.num.eval(x0).divide(&d))
    }

    /// Integer-coefficient bivariate forms `(N, D)` with `self = N/D`,
    /// indexed `[x-degree][a-degree]`. Common content is removed and `D` is
    /// led by a positive coefficient, so the pair is canonical.
    pub fn integer_forms(&self) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
        let l = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .fold(AlphaPoly::one(), |acc, c| alpha_lcm(&acc, c.den()));
        let to_int = |p: &XPoly| -> IntXPoly { p.map(|c| c.num().mul(&l.div_exact(c.den()))) };
        let n = to_int(&self.num);
        let d = to_int(&self.den);
        let g = n
            .coeffs()
            .iter()
            .chain(d.coeffs())
            .filter(|c| !c.is_zero())
            .fold(AlphaPoly::zero(), |acc, c| {
                if acc.is_zero() {
                    c.monic()
                } else {
                    acc.gcd(c)
                }
            });
        let (n, d) = if g.is_constant() {
            (n, d)
        } else {
            (n.map(|c| c.div_exact(&g)), d.map(|c| c.div_exact(&g)))
        };
        let mut den_l = BigInt::one();
        let mut num_g = BigInt::zero();
        for r in n.coeffs().iter().chain(d.coeffs()).flat_map(|c| c.coeffs()) {
            den_l = den_l.lcm(r.denom());
            num_g = num_g.gcd(r.numer());
        }
        let lead_neg = d.lead().lead().is_negative();
        let mut scale =
            Rational::new(den_l.clone(), BigInt::one()) / Rational::new(num_g.clone(), den_l);
        if lead_neg {
            scale = -scale;
        }
        let conv = |p: &IntXPoly| -> Vec<Vec<BigInt>> {
            p.coeffs()
                .iter()
                .map(|c| {
                    c.coeffs()
                        .iter()
                        .map(|r| (r * &scale).to_integer())
                        .collect()
                })
                .collect()
        };
        (conv(&n), conv(&d))
    }
}

impl Zero for XRat {
    fn zero() -> Self {
        XRat {
            num: XPoly::zero(),
            den: XPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for XRat {
    fn one() -> Self {
        Self::from_poly(XPoly::one())
    }
}

impl Ring for XRat {
    fn plus(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_constant() {
                return Self::from_poly(self.num.add(&rhs.num));
            }
            return Self::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        if self.den.is_constant() {
            return XRat {
                num: self.num.mul(&rhs.den).add(&rhs.num),
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_constant() {
            return XRat {
                num: self.num.add(&rhs.num.mul(&self.den)),
                den: self.den.clone(),
            };
        }
        // Henrici: only the gcd of the denominators can cancel.
        let g = xgcd(&self.den, &rhs.den);
        if g.is_constant() {
            return XRat {
                num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
                den: self.den.mul(&rhs.den),
            };
        }
        let d1 = self.den.div_exact(&g);
        let d2 = rhs.den.div_exact(&g);
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        if num.is_zero() {
            return Self::zero();
        }
        let den = d1.mul(&rhs.den);
        let h = xgcd(&num, &g);
        if h.is_constant() {
            XRat { num, den }
        } else {
            XRat {
                num: num.div_exact(&h),
                den: den.div_exact(&h),
            }
        }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let g1 = xgcd(&self.num, &rhs.den);
        let g2 = xgcd(&rhs.num, &self.den);
        let (n1, d2) = if g1.is_constant() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (n2, d1) = if g2.is_constant() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        let den = d1.mul(&d2);
        let inv = den.lead().inverse();
        XRat {
            num: n1.mul(&n2).scale(&inv),
            den: den.scale(&inv),
        }
    }
    fn negate(&self) -> Self {
        XRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_int(n: i64) -> Self {
        Self::constant(AlphaRat::int(n))
    }
}

impl Field for XRat {
    fn inverse(&self) -> Self {
        self.try_inverse()
            .expect("inverse of zero rational function")
    }
}

super::impl_ring_ops!(XRat);
super::impl_field_ops!(XRat);

impl From<AlphaRat> for XRat {
    fn from(c: AlphaRat) -> Self {
        Self::constant(c)
    }
}

impl From<XPoly> for XRat {
    fn from(p: XPoly) -> Self {
        Self::from_poly(p)
    }
}

/// Prints a bivariate integer polynomial indexed `[x-degree][a-degree]`.
pub(crate) fn format_xa(p: &[Vec<BigInt>]) -> String {
    let mut out = String::new();
    for (kx, row) in p.iter().enumerate().rev() {
        for (ka, c) in row.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (kx == 0 && ka == 0) {
                factors.push(mag.to_string());
            }
            match kx {
                0 => {}
                1 => factors.push("x".into()),
                k => factors.push(format!("x^{k}")),
            }
            match ka {
                0 => {}
                1 => factors.push("a".into()),
                k => factors.push(format!("a^{k}")),
            }
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for XRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integer_forms();
        let ns = format_xa(&n);
        let ds = format_xa(&d);
        if ds == "1" {
            write!(f, "{ns}")
        } else {
            write!(f, "({ns})/({ds})")
        }
    }
}

impl fmt::Debug for XRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XRat({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::rat;

    fn xp(v: Vec<AlphaRat>) -> XPoly {
        XPoly::new(v)
    }

    fn c(n: i64) -> AlphaRat {
        AlphaRat::int(n)
    }

    fn alpha_lin(c0: i64, c1: i64) -> AlphaRat {
        AlphaRat::linear(rat(c0, 1), rat(c1, 1))
    }

    #[test]
    fn cancels_x_minus_one() {
        let r = XRat::new(xp(vec![c(-1), c(0), c(1)]), xp(vec![c(-1), c(1)])).unwrap();
        assert_eq!(r, XRat::from_poly(xp(vec![c(1), c(1)])));
    }

    #[test]
    fn reduced_input_unchanged() {
        let f = xp(vec![alpha_lin(2, 2), c(0), c(1)]);
        let r = XRat::new(f.clone(), XPoly::one()).unwrap();
        assert_eq!(r.num(), &f);
        assert_eq!(r.to_string(), "x^2 + 2*a + 2");
    }

    #[test]
    fn constant_field_cancellation() {
        let ap1 = alpha_lin(1, 1);
        let r = XRat::new(xp(vec![c(0), ap1.clone()]), xp(vec![ap1])).unwrap();
        assert_eq!(r, XRat::x());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            XRat::new(XPoly::one(), XPoly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn gcd_with_alpha_dependent_factor() {
        // (x^2 + 2a + 2)(x - a) / ((x^2 + 2a + 2)(x + 1))
        let f = xp(vec![alpha_lin(2, 2), c(0), c(1)]);
        let p = xp(vec![-AlphaRat::alpha(), c(1)]);
        let q = xp(vec![c(1), c(1)]);
        let r = XRat::new(f.mul(&p), f.mul(&q)).unwrap();
        assert_eq!(r.num(), &p);
        assert_eq!(r.den(), &q);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx 1/x = -1/x^2
        assert_eq!(XRat::x_pow(-1).derivative(), XRat::x_pow(-2).scale(&c(-1)));
    }

    #[test]
    fn display_rational_function() {
        let r = XRat::x().divide(&XRat::constant(alpha_lin(-2, 1)));
        assert_eq!(r.to_string(), "(x)/(a - 2)");
    }
}
