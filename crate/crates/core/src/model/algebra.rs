use num_traits::{One, Zero};
use serde::Serialize;

use super::{printed, Model, SeedType};
use crate::arith::{format_nh, format_poly, AlphaRat, NHPoly, Poly, Rational, Ring};
use crate::error::{Error, Result};
use crate::operator::DiffOperator;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    PrintedMismatch,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::PrintedMismatch => "printed-mismatch",
        }
    }
}

/// One comparison between a printed formula and the computed object.
#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub location: String,
    pub printed: Option<String>,
    pub computed: String,
    pub status: Status,
}

impl Discrepancy {
    fn compare(location: String, printed: Option<String>, computed: String, equal: bool) -> Self {
        let status = if equal {
            Status::Pass
        } else {
            Status::PrintedMismatch
        };
        Discrepancy {
            location,
            printed,
            computed,
            status,
        }
    }
}

/// `[c, c^dagger] = S(H)`, `c^dagger c = R(H)`, `c c^dagger = R_raised(H)`,
/// with `[H, c] = -a c`.
#[derive(Clone, Debug)]
pub struct CubicAlgebraData {
    pub ty: Option<SeedType>,
    pub a: Rational,
    /// `[b0, b1, b2, b3]`.
    pub b: [AlphaRat; 4],
    pub s: Poly<AlphaRat>,
    pub r: Poly<AlphaRat>,
    pub r_raised: Poly<AlphaRat>,
}

/// `p(H + c)`.
pub fn shift_poly(p: &Poly<AlphaRat>, c: &AlphaRat) -> Poly<AlphaRat> {
    p.compose(&Poly::new(vec![c.clone(), AlphaRat::one()]))
}

impl CubicAlgebraData {
    /// `S(H) = R(H+a) - R(H)`.
    pub fn closure_difference_holds(&self) -> bool {
        let a = AlphaRat::from(self.a.clone());
        shift_poly(&self.r, &a).sub(&self.r) == self.s
    }

    /// `c c^dagger = R(H+a)`.
    pub fn raised_product_holds(&self) -> bool {
        shift_poly(&self.r, &AlphaRat::from(self.a.clone())) == self.r_raised
    }

    pub fn chain_coeffs(&self) -> FnGnCoeffs {
        generic_chain_coeffs(&AlphaRat::from(self.a.clone()), &self.b)
    }
}

fn not_h_poly(what: &str, ty: SeedType, residual: &DiffOperator) -> Error {
    Error::NotHPolynomial(format!(
        "{what} for type {ty} leaves a residual of order {}",
        residual.order().unwrap_or(0)
    ))
}

/// Ladder step `a` with `[H, B] = -a B`, read off the leading coefficients.
pub fn ladder_step(h: &DiffOperator, b: &DiffOperator) -> Result<Rational> {
    let c = h.commutator(b);
    let top = b.order().ok_or(Error::DivisionByZero)?;
    let ratio = crate::arith::Field::divide(&c.coeff(top), &b.coeff(top))
        .as_constant()
        .and_then(|r| r.as_rational())
        .ok_or_else(|| {
            Error::StructuralViolation("ladder step is not a rational constant".into())
        })?;
    if c != b.scale(&AlphaRat::from(ratio.clone())) {
        return Err(Error::StructuralViolation(
            "[H, B] is not proportional to B".into(),
        ));
    }
    Ok(-ratio)
}

/// Structure and closure polynomials computed from the operators.
pub fn cubic_algebra(m: &Model) -> Result<CubicAlgebraData> {
    let (b, bd) = (&m.b, &m.b_dag);
    let bbd = b.compose(bd);
    let bdb = bd.compose(b);
    let s = bbd
        .sub(&bdb)
        .as_h_polynomial(&m.h, 4)
        .map_err(|res| not_h_poly("[B, B^dagger]", m.ty, &res))?;
    let r = bdb
        .as_h_polynomial(&m.h, 4)
        .map_err(|res| not_h_poly("B^dagger B", m.ty, &res))?;
    let r_raised = bbd
        .as_h_polynomial(&m.h, 4)
        .map_err(|res| not_h_poly("B B^dagger", m.ty, &res))?;
    let s = Poly::new(s);
    if s.degree() != Some(3) {
        return Err(Error::StructuralViolation(format!(
            "[B, B^dagger] has degree {:?} in H",
            s.degree()
        )));
    }
    let b_coeffs = [s.coeff(0), s.coeff(1), s.coeff(2), s.coeff(3)];
    Ok(CubicAlgebraData {
        ty: Some(m.ty),
        a: ladder_step(&m.h, b)?,
        b: b_coeffs,
        s,
        r: Poly::new(r),
        r_raised: Poly::new(r_raised),
    })
}

/// Coefficients of `f_n(H)` and `g_n(H)` laid out as
/// `(x0 + x1 n) H^3 + (x2 + x3 n + x4 n^2) H^2 + (x5 + .. + x8 n^3) H + (x9 + .. + x13 n^4)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FnGnCoeffs {
    pub a: [AlphaRat; 14],
    pub d: [AlphaRat; 14],
}

/// First slot of each `H^k` block, `k = 0..=3`.
const OFFSETS: [usize; 4] = [9, 5, 2, 0];

/// `(H-power, n-power)` of slot `i`.
pub fn slot(i: usize) -> (usize, usize) {
    let k = (0..4)
        .find(|&k| i >= OFFSETS[k] && (k == 0 || i < OFFSETS[k - 1]))
        .expect("slot in range");
    (k, i - OFFSETS[k])
}

fn table_to_nh(t: &[AlphaRat; 14]) -> NHPoly {
    let mut rows: Vec<Vec<AlphaRat>> = vec![Vec::new(); 4];
    for (i, c) in t.iter().enumerate() {
        let (k, j) = slot(i);
        if rows[k].len() <= j {
            rows[k].resize(j + 1, AlphaRat::zero());
        }
        rows[k][j] = c.clone();
    }
    Poly::new(rows.into_iter().map(Poly::new).collect())
}

fn nh_to_table(p: &NHPoly) -> [AlphaRat; 14] {
    std::array::from_fn(|i| {
        let (k, j) = slot(i);
        p.coeff(k).coeff(j)
    })
}

/// `sum_{m=0}^{n-1} m^k` as a polynomial in `n`, `k <= 3`.
fn power_sum(k: usize) -> Poly<AlphaRat> {
    let q = |n: i64, d: i64| AlphaRat::from(crate::arith::rat(n, d));
    Poly::new(match k {
        0 => vec![q(0, 1), q(1, 1)],
        1 => vec![q(0, 1), q(-1, 2), q(1, 2)],
        2 => vec![q(0, 1), q(1, 6), q(-1, 2), q(1, 3)],
        3 => vec![q(0, 1), q(0, 1), q(1, 4), q(-1, 2), q(1, 4)],
        _ => unreachable!("structure polynomials are cubic"),
    })
}

/// `sum_{m=0}^{n-1} S(H + m*step)` as a polynomial in `H` and `n`.
fn shifted_sum(b: &[AlphaRat; 4], step: &AlphaRat) -> NHPoly {
    let mut rows: Vec<Poly<AlphaRat>> = vec![Poly::zero(); 4];
    for (j, bj) in b.iter().enumerate() {
        for (i, row) in rows.iter_mut().enumerate().take(j + 1) {
            // b_j C(j,i) H^i step^(j-i) sum m^(j-i)
            let binom = (0..i).fold(1i64, |acc, t| acc * (j - t) as i64 / (t as i64 + 1));
            let c = bj
                .times(&AlphaRat::int(binom))
                .times(&step.pow((j - i) as u32));
            *row = row.add(&power_sum(j - i).scale(&c));
        }
    }
    Poly::new(rows)
}

/// `f_n(H) = sum_{m<n} S(H + m a)` and `g_n(H) = -sum_{m<n} S(H - m a)`.
pub fn generic_chain_coeffs(a: &AlphaRat, b: &[AlphaRat; 4]) -> FnGnCoeffs {
    let f = shifted_sum(b, a);
    let g = shifted_sum(b, &a.negate()).map(|p| p.neg());
    FnGnCoeffs {
        a: nh_to_table(&f),
        d: nh_to_table(&g),
    }
}

/// Printed tables for the same structure constants.
pub fn printed_coeff_tables(a: &AlphaRat, b: &[AlphaRat; 4]) -> FnGnCoeffs {
    FnGnCoeffs {
        a: printed::a_table(a, b),
        d: printed::d_table(a, b),
    }
}

impl FnGnCoeffs {
    pub fn f_poly(&self) -> NHPoly {
        table_to_nh(&self.a)
    }

    pub fn g_poly(&self) -> NHPoly {
        table_to_nh(&self.d)
    }
}

pub fn fn_poly(data: &CubicAlgebraData) -> NHPoly {
    data.chain_coeffs().f_poly()
}

pub fn gn_poly(data: &CubicAlgebraData) -> NHPoly {
    data.chain_coeffs().g_poly()
}

pub fn nh_eval(p: &NHPoly, n: u32, h: &AlphaRat) -> AlphaRat {
    let n = AlphaRat::int(n.into());
    p.map(|c| c.eval(&n)).eval(h)
}

/// `f_n(lambda)`, the back-action coefficient on an up-chain from weight `lambda`.
pub fn fn_eval(data: &CubicAlgebraData, n: u32, lambda: &AlphaRat) -> AlphaRat {
    nh_eval(&fn_poly(data), n, lambda)
}

/// `g_n(rho)`, the back-action coefficient on a down-chain from weight `rho`.
pub fn gn_eval(data: &CubicAlgebraData, n: u32, rho: &AlphaRat) -> AlphaRat {
    nh_eval(&gn_poly(data), n, rho)
}

/// Compares every printed structure formula of one type against `data`.
pub fn algebra_discrepancies(m: &Model, data: &CubicAlgebraData) -> Vec<Discrepancy> {
    let ty = m.ty;
    let mut out = Vec::new();
    let s_printed = printed::s(ty);
    out.push(Discrepancy::compare(
        format!("S^{ty}"),
        Some(printed::s_source(ty).into()),
        format_poly(&data.s, "H"),
        s_printed == data.s,
    ));
    out.push(Discrepancy::compare(
        format!("R^{ty}"),
        Some(printed::r_source(ty).into()),
        format_poly(&data.r, "H"),
        printed::r(ty) == data.r,
    ));
    let (f, g) = (fn_poly(data), gn_poly(data));
    out.push(Discrepancy::compare(
        format!("f_n^{ty}"),
        Some(printed::fn_source(ty).into()),
        format_nh(&f),
        printed::f_n(ty) == f,
    ));
    out.push(Discrepancy::compare(
        format!("g_n^{ty}"),
        Some(printed::gn_source(ty).into()),
        format_nh(&g),
        printed::g_n(ty) == g,
    ));
    // The printed f_n, g_n agree with the sums taken at step 1 in several
    // cases; record that comparison too so the report separates the two errors.
    let unit = generic_chain_coeffs(&AlphaRat::one(), &data.b);
    out.push(Discrepancy::compare(
        format!("f_n^{ty} (step 1)"),
        Some(printed::fn_source(ty).into()),
        format_nh(&unit.f_poly()),
        printed::f_n(ty) == unit.f_poly(),
    ));
    out.push(Discrepancy::compare(
        format!("g_n^{ty} (step 1)"),
        Some(printed::gn_source(ty).into()),
        format_nh(&unit.g_poly()),
        printed::g_n(ty) == unit.g_poly(),
    ));
    let v_fact = m.h.coeff(0);
    let v_printed = printed::h_minus_potential(ty);
    out.push(Discrepancy::compare(
        format!("H_{ty}^(-) closed form"),
        Some(printed::h_minus_potential_source(ty)),
        format!("{}", super::closed_form_potential(ty)),
        v_fact == v_printed,
    ));
    out
}

/// Compares the printed `a_i`/`d_i` tables against the derived ones.
pub fn table_discrepancies() -> Vec<Discrepancy> {
    // step = alpha, b_k = alpha^(10k+10): every a^i b_k is a distinct monomial,
    // so equality here is equality of the tables as formulas.
    let mono =
        |e: usize| AlphaRat::from_poly(crate::arith::AlphaPoly::monomial(Rational::one(), e));
    let step = mono(1);
    let b = [mono(10), mono(20), mono(30), mono(40)];
    let derived = generic_chain_coeffs(&step, &b);
    let printed = printed_coeff_tables(&step, &b);
    let mut out = Vec::new();
    for (name, d, p) in [("a", &derived.a, &printed.a), ("d", &derived.d, &printed.d)] {
        for i in 0..14 {
            let missing = name == "a" && i == 2;
            out.push(Discrepancy::compare(
                format!("{name}_{i}"),
                (!missing).then(|| p[i].to_string()),
                d[i].to_string(),
                missing || d[i] == p[i],
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b_generic() -> [AlphaRat; 4] {
        [
            AlphaRat::int(5),
            AlphaRat::int(-3),
            AlphaRat::int(7),
            AlphaRat::int(2),
        ]
    }

    #[test]
    fn slots_partition() {
        assert_eq!(slot(0), (3, 0));
        assert_eq!(slot(1), (3, 1));
        assert_eq!(slot(4), (2, 2));
        assert_eq!(slot(8), (1, 3));
        assert_eq!(slot(13), (0, 4));
    }

    #[test]
    fn f_zero_and_one() {
        let c = generic_chain_coeffs(&AlphaRat::int(2), &b_generic());
        let f = c.f_poly();
        let h = AlphaRat::int(3);
        assert!(nh_eval(&f, 0, &h).is_zero());
        let s = Poly::new(b_generic().to_vec());
        assert_eq!(nh_eval(&f, 1, &h), s.eval(&h));
        // g_1(H) = -S(H)
        assert_eq!(nh_eval(&c.g_poly(), 1, &h), s.eval(&h).negate());
    }

    #[test]
    fn f_two_is_two_shifts() {
        let c = generic_chain_coeffs(&AlphaRat::int(2), &b_generic());
        let s = Poly::new(b_generic().to_vec());
        let h = AlphaRat::int(-1);
        let expect = s.eval(&h).plus(&s.eval(&AlphaRat::int(1)));
        assert_eq!(nh_eval(&c.f_poly(), 2, &h), expect);
    }

    #[test]
    fn printed_a_table_agrees_except_gaps() {
        let a = AlphaRat::int(2);
        let c = generic_chain_coeffs(&a, &b_generic());
        let p = printed_coeff_tables(&a, &b_generic());
        assert_eq!(c.a, p.a);
        assert_eq!(c.d[1], b_generic()[3].negate());
        assert_ne!(c.d[1], p.d[1]);
    }
}
