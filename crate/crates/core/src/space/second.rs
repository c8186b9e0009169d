use std::fmt;

use super::state::StateSum;
use crate::arith::AlphaRat;
use crate::error::{Error, Result};

/// `g + f * I`, with `I` the antiderivative of `1/anchor^2` whose additive
/// constant is fixed to zero.
#[derive(Clone, PartialEq, Debug)]
pub struct SecondKindState {
    pub g: StateSum,
    pub f: StateSum,
    anchor: StateSum,
    /// `1/anchor^2`, cached.
    weight: StateSum,
}

impl SecondKindState {
    pub fn new(g: StateSum, f: StateSum, anchor: StateSum) -> Result<Self> {
        if anchor.single().is_none() {
            return Err(Error::Unsupported(
                "second-kind anchor must be a single term".into(),
            ));
        }
        let inv = anchor.recip()?;
        let weight = inv.mul(&inv);
        Ok(SecondKindState {
            g,
            f,
            anchor,
            weight,
        })
    }

    /// `psi * I_psi`, the reduction-of-order partner of `psi`.
    pub fn partner(psi: &StateSum) -> Result<Self> {
        Self::new(StateSum::zero(), psi.clone(), psi.clone())
    }

    pub fn anchor(&self) -> &StateSum {
        &self.anchor
    }

    /// `1/anchor^2`.
    pub fn inverse_square(&self) -> &StateSum {
        &self.weight
    }

    fn with(&self, g: StateSum, f: StateSum) -> Self {
        SecondKindState {
            g,
            f,
            anchor: self.anchor.clone(),
            weight: self.weight.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero() && self.f.is_zero()
    }

    /// True when the `I`-part vanishes.
    pub fn is_first_kind(&self) -> bool {
        self.f.is_zero()
    }

    fn same_anchor(&self, rhs: &Self) {
        assert!(
            self.anchor == rhs.anchor,
            "second-kind states with different anchors"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.same_anchor(rhs);
        self.with(self.g.add(&rhs.g), self.f.add(&rhs.f))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.same_anchor(rhs);
        self.with(self.g.sub(&rhs.g), self.f.sub(&rhs.f))
    }

    pub fn scale(&self, c: &AlphaRat) -> Self {
        self.with(self.g.scale(c), self.f.scale(c))
    }

    /// Adds a first-kind state to the `I`-free part.
    pub fn add_first_kind(&self, s: &StateSum) -> Self {
        self.with(self.g.add(s), self.f.clone())
    }

    pub fn mul_xrat(&self, r: &crate::arith::XRat) -> Self {
        self.with(self.g.mul_xrat(r), self.f.mul_xrat(r))
    }

    /// Multiplies by a function in the class.
    pub fn mul_state(&self, s: &StateSum) -> Self {
        self.with(self.g.mul(s), self.f.mul(s))
    }

    /// `(g + f I)' = (g' + f/anchor^2) + f' I`.
    pub fn derivative(&self) -> Self {
        let g = self.g.derivative().add(&self.f.mul(&self.weight));
        self.with(g, self.f.derivative())
    }

    /// `c` with `self = c * other` for two second-kind states.
    pub fn ratio_to(&self, other: &Self) -> Option<AlphaRat> {
        let cf = if other.f.is_zero() {
            if !self.f.is_zero() {
                return None;
            }
            None
        } else {
            Some(self.f.ratio_to(&other.f)?)
        };
        let cg = if other.g.is_zero() {
            if !self.g.is_zero() {
                return None;
            }
            None
        } else {
            Some(self.g.ratio_to(&other.g)?)
        };
        match (cf, cg) {
            (Some(a), Some(b)) if a == b => Some(a),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => Some(AlphaRat::from(0)),
            _ => None,
        }
    }
}

impl fmt::Display for SecondKindState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + [{}] * I[{}]", self.g, self.f, self.anchor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, AlphaRat, XRat};
    use crate::space::Exponent;
    use num_traits::One;

    fn psi() -> StateSum {
        let r = XRat::x() + XRat::constant(AlphaRat::int(2));
        StateSum::term(rat(-1, 4), Exponent::new(rat(1, 2), 1), r)
    }

    #[test]
    fn partner_derivative() {
        let p = psi();
        let t = SecondKindState::partner(&p).unwrap();
        let d = t.derivative();
        assert_eq!(d.g, p.recip().unwrap());
        assert_eq!(d.f, p.derivative());
    }

    #[test]
    fn no_i_part_reduces_to_plain_derivative() {
        let p = psi();
        let t = SecondKindState::new(p.clone(), StateSum::zero(), p.clone()).unwrap();
        let d = t.derivative();
        assert!(d.f.is_zero());
        assert_eq!(d.g, p.derivative());
    }

    #[test]
    fn multi_term_anchor_rejected() {
        let p = psi().add(&StateSum::from_xrat(XRat::one()));
        assert!(SecondKindState::partner(&p).is_err());
    }
}
