//! Concrete operators of the singular oscillator and its three X1 Darboux
//! partners, with the fourth-order ladders built on them.

mod algebra;
pub mod printed;

pub use algebra::{
    algebra_discrepancies, cubic_algebra, fn_eval, fn_poly, generic_chain_coeffs, gn_eval, gn_poly,
    ladder_step, nh_eval, printed_coeff_tables, shift_poly, slot, table_discrepancies,
    CubicAlgebraData, Discrepancy, FnGnCoeffs, Status,
};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{parse_xrat, rat, AlphaRat, Rational, Ring, XPoly, XRat};
use crate::error::{Error, Result};
use crate::operator::DiffOperator;
use crate::space::{Exponent, StateSum};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum SeedType {
    I,
    II,
    III,
}

impl SeedType {
    pub const ALL: [SeedType; 3] = [SeedType::I, SeedType::II, SeedType::III];
}

impl fmt::Display for SeedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedType::I => "I",
            SeedType::II => "II",
            SeedType::III => "III",
        })
    }
}

impl FromStr for SeedType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" | "1" => Ok(SeedType::I),
            "II" | "ii" | "2" => Ok(SeedType::II),
            "III" | "iii" | "3" => Ok(SeedType::III),
            other => Err(Error::Parse(format!("unknown seed type {other:?}"))),
        }
    }
}

/// `-d^2 + x^2/4 + (a^2 - 1/4)/x^2`.
pub fn singular_oscillator() -> DiffOperator {
    let v = parse_xrat("x^2/4 + (a^2 - 1/4)/x^2").expect("static expression");
    DiffOperator::new(vec![v, XRat::zero(), XRat::from_rational(rat(-1, 1))])
}

fn ladder(sign: i64) -> DiffOperator {
    // (1/4)(2 d^2 +- 2x d + x^2/2 - 2(a^2-1/4)/x^2 +- 1)
    let c0 = parse_xrat("(x^2/2 - 2*(a^2 - 1/4)/x^2)/4")
        .expect("static expression")
        .plus(&XRat::from_rational(rat(sign, 4)));
    let c1 = XRat::x().scale(&AlphaRat::from_rational(rat(sign, 2)));
    DiffOperator::new(vec![c0, c1, XRat::from_rational(rat(1, 2))])
}

/// Lowering ladder `a` of the singular oscillator.
pub fn lowering() -> DiffOperator {
    ladder(1)
}

/// Raising ladder `a^dagger` of the singular oscillator.
pub fn raising() -> DiffOperator {
    ladder(-1)
}

/// Generalized Laguerre polynomial `L_nu^a(z)` with exact Q(a) coefficients.
pub fn laguerre(nu: u32) -> XPoly {
    // L_nu^a(z) = sum_k (-1)^k binom(nu + a, nu - k) z^k / k!
    let mut coeffs = Vec::new();
    for k in 0..=nu {
        let mut b = AlphaRat::one();
        for j in 1..=(nu - k) {
            let f = AlphaRat::linear(Rational::from_integer((k + j).into()), Rational::one());
            b = b
                .times(&f)
                .times(&AlphaRat::from_rational(rat(1, j as i64)));
        }
        let kf: i64 = (1..=k as i64).product();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs.push(b.times(&AlphaRat::from_rational(rat(sign, kf))));
    }
    XPoly::new(coeffs)
}

/// `exp(-x^2/4) x^(a+1/2) L_nu^a(x^2/2)`.
pub fn oscillator_eigenstate(nu: u32) -> StateSum {
    let half_x2 = XPoly::monomial(AlphaRat::from_rational(rat(1, 2)), 2);
    let l = laguerre(nu).compose(&half_x2);
    StateSum::term(rat(-1, 4), Exponent::new(rat(1, 2), 1), XRat::from_poly(l))
}

/// `F_J(x)` as printed: `2+x^2+2a`, `-2+x^2+2a`, `-2-x^2+2a`.
pub fn f_poly(ty: SeedType) -> XRat {
    parse_xrat(match ty {
        SeedType::I => "2 + x^2 + 2*a",
        SeedType::II => "-2 + x^2 + 2*a",
        SeedType::III => "-2 - x^2 + 2*a",
    })
    .expect("static expression")
}

/// Seed in `x` after `z = x^2/2`, with the constant `2^(...)` dropped.
pub fn seed_function(ty: SeedType) -> StateSum {
    let (s, q, core) = match ty {
        // z^((2a+1)/4) e^(z/2) L_1^a(-z)
        SeedType::I => (rat(1, 4), 1, "1 + a + x^2/2"),
        // z^(-(2a-1)/4) e^(-z/2) L_1^(-a)(z)
        SeedType::II => (rat(-1, 4), -1, "1 - a - x^2/2"),
        // z^(-(2a-1)/4) e^(z/2) L_1^(-a)(-z)
        SeedType::III => (rat(1, 4), -1, "1 - a + x^2/2"),
    };
    StateSum::term(
        s,
        Exponent::new(rat(1, 2), q),
        parse_xrat(core).expect("static expression"),
    )
}

pub fn seed_energy(ty: SeedType) -> AlphaRat {
    match ty {
        SeedType::I => AlphaRat::linear(rat(-3, 1), rat(-1, 1)),
        SeedType::II => AlphaRat::linear(rat(3, 1), rat(-1, 1)),
        SeedType::III => AlphaRat::linear(rat(-3, 1), rat(1, 1)),
    }
}

/// Logarithmic derivative `s'/s` of a single-term state.
pub fn log_derivative(s: &StateSum) -> Result<XRat> {
    let (k, r) = s
        .single()
        .ok_or_else(|| Error::Unsupported("log-derivative of a multi-term state".into()))?;
    let d = s.derivative();
    let dr = d.get(k).cloned().unwrap_or_else(XRat::zero);
    Ok(crate::arith::Field::divide(&dr, r))
}

/// `q = -phi'/phi`.
pub fn superpotential_of(phi: &StateSum) -> Result<XRat> {
    Ok(log_derivative(phi)?.negate())
}

pub fn superpotential(ty: SeedType) -> XRat {
    superpotential_of(&seed_function(ty)).expect("seed is a single term")
}

/// `(A, A^dagger) = (d + q, -d + q)`.
pub fn darboux_pair(ty: SeedType) -> (DiffOperator, DiffOperator) {
    let q = DiffOperator::mul_by(superpotential(ty));
    (q.add(&DiffOperator::d()), q.sub(&DiffOperator::d()))
}

/// `1/phi_J`, annihilated by `A_J^dagger`.
pub fn missing_state(ty: SeedType) -> StateSum {
    seed_function(ty).recip().expect("seed is nonzero")
}

/// Everything built from one seed, computed once.
#[derive(Clone, Debug)]
pub struct Model {
    pub ty: SeedType,
    pub h_plus: DiffOperator,
    pub a: DiffOperator,
    pub a_dag: DiffOperator,
    pub seed: StateSum,
    pub energy: AlphaRat,
    pub q: XRat,
    /// `A = d + q`.
    pub big_a: DiffOperator,
    /// `A^dagger = -d + q`.
    pub big_a_dag: DiffOperator,
    /// `H_J^(-) = A A^dagger + E`.
    pub h: DiffOperator,
    /// `B = A a A^dagger`.
    pub b: DiffOperator,
    /// `B^dagger = A a^dagger A^dagger`.
    pub b_dag: DiffOperator,
}

impl Model {
    pub fn new(ty: SeedType) -> Self {
        let (big_a, big_a_dag) = darboux_pair(ty);
        let energy = seed_energy(ty);
        let h = big_a.compose(&big_a_dag).shift(&energy);
        let a = lowering();
        let a_dag = raising();
        let b = big_a.compose(&a).compose(&big_a_dag);
        let b_dag = big_a.compose(&a_dag).compose(&big_a_dag);
        Model {
            ty,
            h_plus: singular_oscillator(),
            a,
            a_dag,
            seed: seed_function(ty),
            energy,
            q: superpotential(ty),
            big_a,
            big_a_dag,
            h,
            b,
            b_dag,
        }
    }

    /// The Darboux-deformed Hamiltonian.
    pub fn deformed_hamiltonian(&self) -> &DiffOperator {
        &self.h
    }

    pub fn fourth_order_ladder(&self) -> (&DiffOperator, &DiffOperator) {
        (&self.b, &self.b_dag)
    }

    /// `V^+- = q^2 -+ q' + E`.
    pub fn potentials(&self) -> (XRat, XRat) {
        let q2 = self.q.times(&self.q);
        let dq = self.q.derivative();
        let e = XRat::constant(self.energy.clone());
        (q2.minus(&dq).plus(&e), q2.plus(&dq).plus(&e))
    }
}

/// Potential of `H_J^(-)` with the closed form rebuilt from its partial
/// fractions: `c/x^2 + x^2/4 + k + 8x^2/G^2 - 4/G`, where `G` is the monic
/// seed core (`-F_III` for type III).
pub fn closed_form_potential(ty: SeedType) -> XRat {
    let src = match ty {
        SeedType::I => "x^2/4 + (2*a+1)*(2*a+3)/(4*x^2) - 1 + 8*x^2/(x^2+2+2*a)^2 - 4/(x^2+2+2*a)",
        SeedType::II => "x^2/4 + (2*a-1)*(2*a-3)/(4*x^2) + 1 + 8*x^2/(x^2-2+2*a)^2 - 4/(x^2-2+2*a)",
        SeedType::III => {
            "x^2/4 + (2*a-1)*(2*a-3)/(4*x^2) - 1 + 8*x^2/(x^2+2-2*a)^2 - 4/(x^2+2-2*a)"
        }
    };
    parse_xrat(src).expect("static expression")
}

/// `-d^2 + V` for a potential `V`.
pub fn schrodinger(v: XRat) -> DiffOperator {
    DiffOperator::new(vec![v, XRat::zero(), XRat::from_rational(rat(-1, 1))])
}

/// `(a + 1)` as a Q(a) value, shorthand used by fixtures.
pub fn alpha_plus(c: i64) -> AlphaRat {
    AlphaRat::linear(Rational::from_integer(c.into()), Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_alpha;

    #[test]
    fn heisenberg_weyl_relations() {
        let h = singular_oscillator();
        let (a, ad) = (lowering(), raising());
        assert_eq!(a.commutator(&ad), h);
        assert_eq!(h.commutator(&a), a.scale(&AlphaRat::int(-2)));
        assert_eq!(h.commutator(&ad), ad.scale(&AlphaRat::int(2)));
    }

    #[test]
    fn ground_state_energy() {
        let h = singular_oscillator();
        let psi0 = oscillator_eigenstate(0);
        assert_eq!(h.apply(&psi0), psi0.scale(&alpha_plus(1)));
    }

    #[test]
    fn laguerre_one() {
        // L_1^a(z) = 1 + a - z
        let l = laguerre(1);
        assert_eq!(l.coeff(0), alpha_plus(1));
        assert_eq!(l.coeff(1), AlphaRat::int(-1));
    }

    #[test]
    fn type_one_superpotential() {
        let q = superpotential(SeedType::I);
        let expect = parse_xrat("-((2*a+1)/(2*x) + x/2 + 2*x/(2+2*a+x^2))").unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn seed_energies() {
        assert_eq!(seed_energy(SeedType::I), parse_alpha("-a-3").unwrap());
        assert_eq!(seed_energy(SeedType::III), parse_alpha("a-3").unwrap());
    }

    #[test]
    fn gaussian_superpotential() {
        let g = StateSum::term(rat(-1, 4), Exponent::zero(), XRat::one());
        assert_eq!(
            superpotential_of(&g).unwrap(),
            XRat::x().scale(&AlphaRat::from_rational(rat(1, 2)))
        );
    }
}
