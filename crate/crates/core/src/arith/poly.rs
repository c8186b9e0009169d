//! Dense univariate polynomials over an arbitrary coefficient ring.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and structural equality is equality of
//! polynomials.

use super::ring::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        Poly { coeffs: v }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn lead(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(v)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.minus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.negate(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(v)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![C::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&C::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.times(x).plus(c))
    }

    /// Substitutes a polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(inner).add(&Self::constant(c.clone()))
        })
    }

    /// Maps every coefficient through `f`.
    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Pseudo-remainder: `lead(rhs)^(deg self - deg rhs + 1) * self mod rhs`,
    /// computed without leaving the coefficient ring.
    pub fn pseudo_rem(&self, rhs: &Self) -> Self {
        let db = rhs.degree().expect("pseudo-remainder by zero polynomial");
        let lb = rhs.lead();
        let mut r = self.clone();
        let mut steps = match self.degree() {
            Some(da) if da >= db => da - db + 1,
            _ => return r,
        };
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            let t = rhs.scale(&lr).shift(dr - db);
            r = r.scale(&lb).sub(&t);
            steps -= 1;
        }
        let lb_pow = (0..steps).fold(C::one(), |acc, _| acc.times(&lb));
        r.scale(&lb_pow)
    }
}

impl<C: Field> Poly<C> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        let db = rhs.degree().expect("division by zero polynomial");
        let inv = rhs.lead().inverse();
        let mut q = vec![C::zero(); self.coeffs.len().saturating_sub(db)];
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.lead().times(&inv);
            r = r.sub(&rhs.scale(&c).shift(dr - db));
            q[dr - db] = c;
        }
        (Self::new(q), r)
    }

    /// Exact division; the caller guarantees `rhs | self`.
    pub fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lead().inverse();
        self.scale(&inv)
    }

    /// Monic gcd by the plain Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.monic();
        let mut b = rhs.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }
}

impl<C: Ring> num_traits::Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> num_traits::One for Poly<C> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<C: Ring> std::ops::Add for Poly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Poly::add(&self, &rhs)
    }
}

impl<C: Ring> std::ops::Mul for Poly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Poly::mul(&self, &rhs)
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn from_int(n: i64) -> Self {
        Poly::constant(C::from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::{rat, Rational};

    fn p(v: &[i64]) -> Poly<Rational> {
        Poly::new(v.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(r, p(&[-2]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = p(&[-1, 0, 1]); // (x-1)(x+1)
        let b = p(&[-1, 1]).mul(&p(&[2, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn pseudo_rem_matches_scaled_rem() {
        let a = p(&[3, 1, 4, 1, 5]);
        let b = p(&[2, 0, 7]);
        let pr = a.pseudo_rem(&b);
        let (_, r) = a.scale(&rat(7 * 7 * 7, 1)).div_rem(&b);
        assert_eq!(pr, r);
    }

    #[test]
    fn compose_with_shift() {
        // (x+1)^2 evaluated through composition
        let sq = p(&[0, 0, 1]);
        assert_eq!(sq.compose(&p(&[1, 1])), p(&[1, 2, 1]));
    }
}
