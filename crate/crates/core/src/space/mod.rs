//! Quasi-rational function class `exp(s x^2) x^(p+q a) R(x)` with exact
//! calculus, plus second-kind states `g + f * I` where `I' = 1/anchor^2`.

mod second;
mod state;

pub use second::SecondKindState;
pub use state::{Exponent, Key, QTerm, StateSum};

use num_traits::Zero;

use crate::arith::linsolve::{self, Solution};
use crate::arith::{xlcm, AlphaRat, XPoly};

/// Solves `sum_j c_j * basis[j] = target` for the coefficients `c_j`.
///
/// Every key is matched separately; within a key the rational parts are put
/// over a common denominator and compared coefficient-wise in `x`. Returns
/// `None` if the target lies outside the span.
pub fn solve_combination(basis: &[StateSum], target: &StateSum) -> Option<Solution<AlphaRat>> {
    let n = basis.len();
    let mut keys: Vec<&Key> = basis
        .iter()
        .flat_map(|b| b.keys())
        .chain(target.keys())
        .collect();
    keys.sort();
    keys.dedup();
    let mut rows: Vec<Vec<AlphaRat>> = Vec::new();
    let mut rhs: Vec<AlphaRat> = Vec::new();
    for key in keys {
        let parts: Vec<_> = basis.iter().map(|b| b.get(key)).collect();
        let t = target.get(key);
        let den = parts
            .iter()
            .flatten()
            .chain(t.iter())
            .fold(XPoly::one(), |acc, r| xlcm(&acc, r.den()));
        let lift = |r: Option<&crate::arith::XRat>| -> XPoly {
            match r {
                Some(r) => r.num().mul(&den.div_exact(r.den())),
                None => XPoly::zero(),
            }
        };
        let cols: Vec<XPoly> = parts.iter().map(|r| lift(*r)).collect();
        let tv = lift(t);
        let deg = cols
            .iter()
            .chain(std::iter::once(&tv))
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        for d in 0..=deg {
            rows.push(cols.iter().map(|p| p.coeff(d)).collect());
            rhs.push(tv.coeff(d));
        }
    }
    if rows.is_empty() {
        return Some(Solution {
            particular: vec![AlphaRat::zero(); n],
            nullspace: (0..n)
                .map(|i| (0..n).map(|j| AlphaRat::from(i64::from(i == j))).collect())
                .collect(),
        });
    }
    linsolve::solve(rows, rhs, n)
}

/// `sum_j c_j * basis[j]`.
pub fn combine(basis: &[StateSum], coeffs: &[AlphaRat]) -> StateSum {
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .fold(StateSum::zero(), |acc, (b, c)| acc.add(&b.scale(c)))
}

/// Exact decomposition of `target` in the span of linearly independent
/// `basis` states.
pub fn decompose(basis: &[StateSum], target: &StateSum) -> Option<Vec<AlphaRat>> {
    solve_combination(basis, target).map(|s| s.particular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, XRat};
    use num_traits::One;

    #[test]
    fn decompose_two_keys() {
        let u = StateSum::term(rat(-1, 4), Exponent::new(rat(1, 2), 1), XRat::one());
        let v = StateSum::term(rat(1, 4), Exponent::new(rat(1, 2), -1), XRat::x());
        let c1 = AlphaRat::linear(rat(1, 1), rat(1, 1));
        let c2 = AlphaRat::int(-3);
        let t = u.scale(&c1).add(&v.scale(&c2));
        assert_eq!(decompose(&[u, v], &t), Some(vec![c1, c2]));
    }

    #[test]
    fn outside_span_is_none() {
        let u = StateSum::term(rat(-1, 4), Exponent::zero(), XRat::one());
        let t = StateSum::term(rat(-1, 4), Exponent::zero(), XRat::x());
        assert!(decompose(&[u], &t).is_none());
    }
}
