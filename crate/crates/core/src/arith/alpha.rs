//! Polynomials and rational functions in the formal parameter `a` (alpha).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::ring::{rat_int, Field, Rational, Ring};
use crate::error::{Error, Result};

pub type AlphaPoly = Poly<Rational>;

/// Rational content of a polynomial over Q: gcd of numerators over lcm of
/// denominators, signed like the leading coefficient. `p / content(p)` is a
/// primitive integer polynomial with positive leading coefficient.
pub fn content(p: &AlphaPoly) -> Rational {
    if p.is_zero() {
        return Rational::one();
    }
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in p.coeffs() {
        if c.is_zero() {
            continue;
        }
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    let r = Rational::new(num, den);
    if p.lead().is_negative() {
        -r
    } else {
        r
    }
}

/// `p / content(p)`
pub fn primitive_part(p: &AlphaPoly) -> AlphaPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p);
    p.scale(&c.recip())
}

/// An element of Q(a) in lowest terms with a primitive, positively led
/// integer denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlphaRat {
    num: AlphaPoly,
    den: AlphaPoly,
}

impl AlphaRat {
    pub fn new(num: AlphaPoly, den: AlphaPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: AlphaPoly, den: AlphaPoly) -> Self {
        if num.is_zero() {
            return Self::from_rational(Rational::zero());
        }
        let (mut num, mut den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        if den.is_constant() {
            let c = den.lead();
            num = num.scale(&c.recip());
            den = AlphaPoly::one();
        } else {
            let c = content(&den);
            let inv = c.recip();
            den = den.scale(&inv);
            num = num.scale(&inv);
        }
        AlphaRat { num, den }
    }

    pub fn from_poly(p: AlphaPoly) -> Self {
        AlphaRat {
            num: p,
            den: AlphaPoly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(AlphaPoly::constant(r))
    }

    pub fn int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// The parameter `a` itself.
    pub fn alpha() -> Self {
        Self::from_poly(AlphaPoly::var())
    }

    /// `c0 + c1 * a`
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Self::from_poly(AlphaPoly::new(vec![c0, c1]))
    }

    pub fn num(&self) -> &AlphaPoly {
        &self.num
    }

    pub fn den(&self) -> &AlphaPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Returns the rational value when the element does not depend on `a`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0) / self.den.coeff(0))
        } else {
            None
        }
    }

    /// Evaluates at `a = a0`, refusing parameters that kill the denominator.
    pub fn eval(&self, a0: &Rational) -> Result<Rational> {
        let d = self.den.eval(a0);
        if d.is_zero() {
            return Err(Error::DegenerateParameter {
                factor: format_alpha_poly(&self.den),
                value: a0.to_string(),
            });
        }
        Ok(self.num.eval(a0) / d)
    }

    pub fn pow(&self, e: u32) -> Self {
        AlphaRat {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

impl Zero for AlphaRat {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for AlphaRat {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Ring for AlphaRat {
    fn plus(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalize(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return AlphaRat {
                num: self.num.mul(&rhs.num),
                den: AlphaPoly::one(),
            };
        }
        Self::normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn negate(&self) -> Self {
        AlphaRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_int(n: i64) -> Self {
        Self::int(n)
    }
}

impl Field for AlphaRat {
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(a)");
        Self::normalize(self.den.clone(), self.num.clone())
    }
}

super::impl_ring_ops!(AlphaRat);
super::impl_field_ops!(AlphaRat);

impl From<Rational> for AlphaRat {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for AlphaRat {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

/// Prints an integer-coefficient polynomial in descending powers of `var`.
pub(crate) fn format_int_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
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
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Scales a rational polynomial to integer coefficients; returns the integer
/// coefficients and the common denominator used.
pub(crate) fn integerize(p: &AlphaPoly) -> (Vec<BigInt>, BigInt) {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    (ints, l)
}

pub fn format_alpha_poly(p: &AlphaPoly) -> String {
    let (ints, l) = integerize(p);
    let body = format_int_poly(&ints, "a");
    if l.is_one() {
        body
    } else if ints.iter().filter(|c| !c.is_zero()).count() > 1 {
        format!("({body})/{l}")
    } else {
        format!("{body}/{l}")
    }
}

fn needs_parens(s: &str) -> bool {
    s.trim_start_matches('-').contains([' ', '/'])
}

impl fmt::Display for AlphaRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Integer-normalized: N(a)/D(a) with integer coefficients.
        let (n_ints, l) = integerize(&self.num);
        let (d_ints, _) = integerize(&self.den.scale(&Rational::from_integer(l)));
        let n = format_int_poly(&n_ints, "a");
        let d = format_int_poly(&d_ints, "a");
        if d == "1" {
            write!(f, "{n}")
        } else {
            let n = if needs_parens(&n) {
                format!("({n})")
            } else {
                n
            };
            let d = if needs_parens(&d) || d.contains('*') || d.contains('^') {
                format!("({d})")
            } else {
                d
            };
            write!(f, "{n}/{d}")
        }
    }
}

impl fmt::Debug for AlphaRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlphaRat({self})")
    }
}

/// Parses short affine expressions such as `1+alpha`, `-alpha-1`, `alpha+1`,
/// `2*a - 3/2`, `1/3`. The parameter may be written `a` or `alpha`.
pub fn parse_alpha_affine(src: &str) -> Option<AlphaRat> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let s = s.replace("alpha", "a");
    let mut c0 = Rational::zero();
    let mut c1 = Rational::zero();
    let mut term = String::new();
    let mut sign = Rational::one();
    let mut flush = |term: &str, sign: &Rational| -> Option<()> {
        if term.is_empty() {
            return None;
        }
        let (coef, has_a) = if let Some(rest) = term.strip_suffix('a') {
            let rest = rest.strip_suffix('*').unwrap_or(rest);
            let c = if rest.is_empty() {
                Rational::one()
            } else {
                super::ring::parse_rational(rest)?
            };
            (c, true)
        } else if let Some(rest) = term.strip_prefix("a*") {
            (super::ring::parse_rational(rest)?, true)
        } else {
            (super::ring::parse_rational(term)?, false)
        };
        if has_a {
            c1 += sign * coef;
        } else {
            c0 += sign * coef;
        }
        Some(())
    };
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            flush(&term, &sign)?;
            term.clear();
            sign = if ch == '-' {
                -Rational::one()
            } else {
                Rational::one()
            };
        } else if ch == '-' {
            sign = -Rational::one();
        } else if ch == '+' {
        } else {
            term.push(ch);
        }
    }
    flush(&term, &sign)?;
    Some(AlphaRat::linear(c0, c1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::rat;

    fn lin(c0: i64, c1: i64) -> AlphaRat {
        AlphaRat::linear(rat(c0, 1), rat(c1, 1))
    }

    #[test]
    fn cancels_common_factor() {
        // (a^2 - 1)/(a - 1) = a + 1
        let num = lin(-1, 1).times(&lin(1, 1));
        let r = num.divide(&lin(-1, 1));
        assert_eq!(r, lin(1, 1));
        assert!(r.is_polynomial());
    }

    #[test]
    fn cancellation_to_constant_denominator() {
        // (2a - 3)(a + 1) / (4a - 6) = (a + 1)/2
        let r = lin(-3, 2).times(&lin(1, 1)).divide(&lin(-6, 4));
        assert_eq!(r, lin(1, 1).divide(&AlphaRat::int(2)));
        assert!(r.den().coeffs() == [rat(1, 1)]);
        let one = lin(-3, 2).divide(&lin(-3, 2));
        assert_eq!(one, AlphaRat::one());
    }

    #[test]
    fn denominator_is_primitive_positive() {
        let r = AlphaRat::one().divide(&lin(4, -2)); // 1/(4 - 2a)
        assert_eq!(r.den().coeffs(), &[rat(-2, 1), rat(1, 1)]);
        assert_eq!(r.num().coeffs(), &[rat(-1, 2)]);
        assert_eq!(r.to_string(), "-1/(2*a - 4)");
    }

    #[test]
    fn eval_rejects_pole() {
        let r = AlphaRat::one().divide(&lin(-2, 1));
        assert!(matches!(
            r.eval(&rat(2, 1)),
            Err(Error::DegenerateParameter { .. })
        ));
        assert_eq!(r.eval(&rat(3, 1)).unwrap(), rat(1, 1));
    }

    #[test]
    fn display_integer_normalized() {
        let r = AlphaRat::linear(rat(1, 2), rat(3, 4));
        assert_eq!(r.to_string(), "(3*a + 2)/4");
        assert_eq!(AlphaRat::zero().to_string(), "0");
        assert_eq!(lin(-1, -1).to_string(), "-a - 1");
    }

    #[test]
    fn parses_affine_forms() {
        assert_eq!(parse_alpha_affine("1+alpha").unwrap(), lin(1, 1));
        assert_eq!(parse_alpha_affine("-alpha-1").unwrap(), lin(-1, -1));
        assert_eq!(parse_alpha_affine("alpha-5").unwrap(), lin(-5, 1));
        assert_eq!(
            parse_alpha_affine("2*a+1/2").unwrap(),
            AlphaRat::linear(rat(1, 2), rat(2, 1))
        );
        assert_eq!(parse_alpha_affine("-3").unwrap(), lin(-3, 0));
        assert!(parse_alpha_affine("b+1").is_none());
        assert!(parse_alpha_affine("").is_none());
    }
}
