//! Ordinary differential operators `sum_k c_k(x) d^k` with coefficients in
//! Q(a)(x).

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{AlphaRat, Field, Ring, XRat};
use crate::space::{SecondKindState, StateSum};

#[derive(Clone, PartialEq)]
pub struct DiffOperator {
    /// `coeffs[k]` multiplies `d^k`; no trailing zeros.
    coeffs: Vec<XRat>,
}

/// Anything an operator can act on.
pub trait Differentiable: Clone {
    fn zero_like(&self) -> Self;
    fn d(&self) -> Self;
    fn times(&self, r: &XRat) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
}

impl Differentiable for StateSum {
    fn zero_like(&self) -> Self {
        StateSum::zero()
    }
    fn d(&self) -> Self {
        self.derivative()
    }
    fn times(&self, r: &XRat) -> Self {
        self.mul_xrat(r)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
}

impl Differentiable for SecondKindState {
    fn zero_like(&self) -> Self {
        self.scale(&AlphaRat::zero())
    }
    fn d(&self) -> Self {
        self.derivative()
    }
    fn times(&self, r: &XRat) -> Self {
        self.mul_xrat(r)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

impl DiffOperator {
    pub fn new(mut coeffs: Vec<XRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOperator { coeffs }
    }

    pub fn zero() -> Self {
        DiffOperator { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::mul_by(XRat::one())
    }

    /// Multiplication by `r`.
    pub fn mul_by(r: XRat) -> Self {
        Self::new(vec![r])
    }

    pub fn constant(c: AlphaRat) -> Self {
        Self::mul_by(XRat::constant(c))
    }

    /// `d/dx`.
    pub fn d() -> Self {
        Self::new(vec![XRat::zero(), XRat::one()])
    }

    pub fn coeffs(&self) -> &[XRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> XRat {
        self.coeffs.get(k).cloned().unwrap_or_else(XRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).plus(&rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).minus(&rhs.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.negate()).collect())
    }

    pub fn scale(&self, c: &AlphaRat) -> Self {
        Self::new(self.coeffs.iter().map(|r| r.scale(c)).collect())
    }

    /// `self + c` (identity times a constant).
    pub fn shift(&self, c: &AlphaRat) -> Self {
        self.add(&Self::constant(c.clone()))
    }

    /// `self o rhs`, by the Leibniz rule
    /// `a d^i o b d^j = sum_m C(i,m) a b^(m) d^(i-m+j)`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let (Some(n1), Some(n2)) = (self.order(), rhs.order()) else {
            return Self::zero();
        };
        // derivatives of the right-hand coefficients, up to order n1
        let derivs: Vec<Vec<XRat>> = rhs
            .coeffs
            .iter()
            .map(|b| {
                let mut v = vec![b.clone()];
                for _ in 0..n1 {
                    let next = v.last().unwrap().derivative();
                    v.push(next);
                }
                v
            })
            .collect();
        let mut terms: Vec<Vec<XRat>> = vec![Vec::new(); n1 + n2 + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, dv) in derivs.iter().enumerate() {
                for (m, bm) in dv.iter().enumerate().take(i + 1) {
                    if bm.is_zero() {
                        continue;
                    }
                    let c = a.times(bm).scale(&AlphaRat::int(binomial(i, m)));
                    terms[i - m + j].push(c);
                }
            }
        }
        Self::new(terms.iter().map(XRat::sum).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    /// `self o rhs - rhs o self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    pub fn apply<S: Differentiable>(&self, s: &S) -> S {
        let mut acc = s.zero_like();
        let mut dk = s.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                dk = dk.d();
            }
            if !c.is_zero() {
                acc = acc.plus(&dk.times(c));
            }
        }
        acc
    }

    /// Writes `self = sum_k c_k H^k` with `k <= max_deg`, or returns the
    /// nonzero residual left after elimination.
    pub fn as_h_polynomial(
        &self,
        h: &DiffOperator,
        max_deg: usize,
    ) -> Result<Vec<AlphaRat>, DiffOperator> {
        let Some(hord) = h.order().filter(|&o| o > 0) else {
            return Err(self.clone());
        };
        let hlead = h.coeff(hord);
        let mut powers = vec![DiffOperator::identity()];
        for _ in 0..max_deg {
            let next = powers.last().unwrap().compose(h);
            powers.push(next);
        }
        let mut rest = self.clone();
        let mut out = vec![AlphaRat::zero(); max_deg + 1];
        while let Some(ord) = rest.order() {
            if ord % hord != 0 || ord / hord > max_deg {
                return Err(rest);
            }
            let d = ord / hord;
            let ratio = rest.coeff(ord).divide(&hlead.pow(d as u32));
            let Some(c) = ratio.as_constant() else {
                return Err(rest);
            };
            rest = rest.sub(&powers[d].scale(&c));
            out[d] = out[d].plus(&c);
        }
        while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        Ok(out)
    }

    /// `sum_k c_k H^k`.
    pub fn polynomial_in(h: &DiffOperator, coeffs: &[AlphaRat]) -> DiffOperator {
        coeffs
            .iter()
            .rev()
            .fold(DiffOperator::zero(), |acc, c| acc.compose(h).shift(c))
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) * d^{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::space::Exponent;

    fn x_op() -> DiffOperator {
        DiffOperator::mul_by(XRat::x())
    }

    #[test]
    fn d_x_commutator_is_identity() {
        assert_eq!(
            DiffOperator::d().commutator(&x_op()),
            DiffOperator::identity()
        );
    }

    #[test]
    fn annihilates_gaussian() {
        let a = DiffOperator::d().add(&DiffOperator::mul_by(
            XRat::x().scale(&AlphaRat::from(rat(1, 2))),
        ));
        let g = StateSum::term(rat(-1, 4), Exponent::zero(), XRat::one());
        assert!(a.apply(&g).is_zero());
    }

    #[test]
    fn orders_add_under_composition() {
        let h = DiffOperator::d().pow(2).add(&x_op());
        assert_eq!(h.compose(&h).order(), Some(4));
    }

    #[test]
    fn h_polynomial_roundtrip() {
        let h = DiffOperator::d()
            .pow(2)
            .neg()
            .add(&DiffOperator::mul_by(XRat::x().pow(2)));
        let d = h.compose(&h);
        let c = d.as_h_polynomial(&h, 4).unwrap();
        assert_eq!(c, vec![AlphaRat::zero(), AlphaRat::zero(), AlphaRat::one()]);
        assert_eq!(DiffOperator::polynomial_in(&h, &c), d);
    }

    #[test]
    fn first_order_is_not_h_polynomial() {
        let h = DiffOperator::d().pow(2).neg();
        assert!(DiffOperator::d().as_h_polynomial(&h, 4).is_err());
    }

    #[test]
    fn self_commutator_vanishes() {
        let h = DiffOperator::d().pow(2).add(&x_op());
        assert!(h.commutator(&h).is_zero());
    }
}
