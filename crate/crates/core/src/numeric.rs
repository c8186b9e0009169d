//! High-precision spot checks. Every state is expanded as a truncated Taylor
//! series at a sample point `x0` and specialized at `a0`, and operators act on
//! the series coefficient by coefficient. Nothing here reuses the exact
//! differentiation or composition of the symbolic engine.

use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{AlphaRat, Poly, Rational, XPoly, XRat};
use crate::error::{Error, Result};
use crate::model::{closed_form_potential, f_poly, schrodinger, Model, SeedType};
use crate::operator::DiffOperator;
use crate::space::{SecondKindState, StateSum};
use crate::spectra::State;

/// Working precision in bits.
pub const PRECISION: usize = 128;
const RM: RoundingMode = RoundingMode::ToEven;

/// Residual bound of the spot checks.
pub const TOLERANCE: &str = "1e-20";

/// A sample point `(x0, a0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub x: Rational,
    pub a: Rational,
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x0={}, a0={}", self.x, self.a)
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `count` points with `x0` in `(1/2, 3)` and non-integer `a0` in `(1/4, 4)`,
/// kept away from the zeros of `F_J`.
pub fn sample_points(ty: SeedType, count: usize, seed: u64) -> Vec<Point> {
    sample_points_where(ty, count, seed, |_| true)
}

/// As [`sample_points`], keeping only points accepted by `accept`.
pub fn sample_points_where(
    ty: SeedType,
    count: usize,
    seed: u64,
    accept: impl Fn(&Point) -> bool,
) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = f_poly(ty);
    let mut out = Vec::new();
    while out.len() < count {
        let xd = rng.gen_range(5..40i64);
        let x = q(rng.gen_range(xd / 2 + 1..3 * xd), xd);
        // prime denominators keep a0 off the integer and half-integer degeneracies
        let ad = [7i64, 11, 13, 17][rng.gen_range(0..4)];
        let an = rng.gen_range(ad / 4 + 1..4 * ad);
        if an % ad == 0 {
            continue;
        }
        let a = q(an, ad);
        let fv = match eval_xrat_exact(&f, &x, &a) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if fv.abs() < q(1, 4) {
            continue;
        }
        let pt = Point { x, a };
        if accept(&pt) {
            out.push(pt);
        }
    }
    out
}

fn eval_alpha(c: &AlphaRat, a0: &Rational) -> Result<Rational> {
    c.eval(a0)
}

fn eval_poly_exact(p: &XPoly, x0: &Rational, a0: &Rational) -> Result<Rational> {
    let mut acc = Rational::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * x0 + eval_alpha(c, a0)?;
    }
    Ok(acc)
}

fn eval_xrat_exact(r: &XRat, x0: &Rational, a0: &Rational) -> Result<Rational> {
    let d = eval_poly_exact(r.den(), x0, a0)?;
    if d.is_zero() {
        return Err(Error::EvaluationAtPole);
    }
    Ok(eval_poly_exact(r.num(), x0, a0)? / d)
}

/// Coefficients of `p(x0 + t)`, truncated to `n` terms.
fn poly_series(p: &XPoly, pt: &Point, n: usize) -> Result<Vec<Rational>> {
    let mut acc: Vec<Rational> = vec![Rational::zero(); n];
    for c in p.coeffs().iter().rev() {
        // acc = acc * (x0 + t) + c
        let mut next = vec![Rational::zero(); n];
        for k in 0..n {
            next[k] = &acc[k] * &pt.x;
            if k > 0 {
                next[k] += &acc[k - 1];
            }
        }
        next[0] += eval_alpha(c, &pt.a)?;
        acc = next;
    }
    Ok(acc)
}

/// Exact Taylor coefficients of a rational function at `x0`.
pub fn xrat_series(r: &XRat, pt: &Point, n: usize) -> Result<Vec<Rational>> {
    let num = poly_series(r.num(), pt, n)?;
    let den = poly_series(r.den(), pt, n)?;
    if n > 0 && den[0].is_zero() {
        return Err(Error::EvaluationAtPole);
    }
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = num[k].clone();
        for j in 1..=k {
            s -= &den[j] * &out[k - j];
        }
        out.push(s / &den[0]);
    }
    Ok(out)
}

/// Lower estimate of the convergence radius of `r` at `x0`, read off the
/// growth of its Taylor coefficients of order `n/2..n`.
pub fn radius_estimate(r: &XRat, pt: &Point, n: usize) -> Result<f64> {
    use num_traits::ToPrimitive;
    let c = xrat_series(r, pt, n + 1)?;
    let scale = c
        .iter()
        .take(3)
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    if scale.is_zero() {
        return Ok(f64::INFINITY);
    }
    let mut rho: f64 = 0.0;
    for (k, v) in c.iter().enumerate().skip((n / 2).max(1)) {
        let ratio = (v.abs() / &scale).to_f64().unwrap_or(f64::INFINITY);
        rho = rho.max(ratio.powf(1.0 / k as f64));
    }
    Ok(if rho == 0.0 { f64::INFINITY } else { 1.0 / rho })
}

/// Normalized Taylor coefficients `c_k = f^(k)(x0) / k!`.
#[derive(Clone, Debug)]
pub struct Jet(pub Vec<BigFloat>);

impl Jet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn truncate(mut self, n: usize) -> Jet {
        self.0.truncate(n);
        self
    }

    /// Largest coefficient magnitude.
    pub fn norm(&self) -> BigFloat {
        let mut m = BigFloat::from_i64(0, 64);
        for c in &self.0 {
            let a = c.abs();
            if a.cmp(&m) == Some(1) {
                m = a;
            }
        }
        m
    }
}

/// Arithmetic context: precision, rounding and the constants cache.
pub struct Num {
    cc: Consts,
    p: usize,
}

impl Num {
    pub fn new() -> Result<Self> {
        let cc = Consts::new()
            .map_err(|e| Error::Unsupported(format!("astro-float constants: {e:?}")))?;
        Ok(Num { cc, p: PRECISION })
    }

    pub fn with_precision(p: usize) -> Result<Self> {
        let mut n = Self::new()?;
        n.p = p;
        Ok(n)
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn rational(&mut self, r: &Rational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        n.div(&d, self.p, RM)
    }

    pub fn parse(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.p, RM, &mut self.cc)
    }

    /// Short decimal rendering.
    pub fn show(&mut self, v: &BigFloat) -> String {
        let mut v = v.clone();
        let _ = v.set_precision(64, RM);
        v.format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "nan".into())
    }

    pub fn constant(&self, c: BigFloat, n: usize) -> Jet {
        let mut v = vec![BigFloat::from_i64(0, self.p); n];
        if n > 0 {
            v[0] = c;
        }
        Jet(v)
    }

    /// The jet of `x` itself.
    pub fn var(&mut self, x0: &Rational, n: usize) -> Jet {
        let v = self.rational(x0);
        let mut j = self.constant(v, n);
        if n > 1 {
            j.0[1] = self.int(1);
        }
        j
    }

    pub fn add(&self, a: &Jet, b: &Jet) -> Jet {
        Jet(a
            .0
            .iter()
            .zip(&b.0)
            .map(|(x, y)| x.add(y, self.p, RM))
            .collect())
    }

    pub fn sub(&self, a: &Jet, b: &Jet) -> Jet {
        Jet(a
            .0
            .iter()
            .zip(&b.0)
            .map(|(x, y)| x.sub(y, self.p, RM))
            .collect())
    }

    pub fn scale(&self, a: &Jet, c: &BigFloat) -> Jet {
        Jet(a.0.iter().map(|x| x.mul(c, self.p, RM)).collect())
    }

    pub fn mul(&self, a: &Jet, b: &Jet) -> Jet {
        let n = a.len().min(b.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = self.int(0);
            for j in 0..=k {
                s = s.add(&a.0[j].mul(&b.0[k - j], self.p, RM), self.p, RM);
            }
            out.push(s);
        }
        Jet(out)
    }

    pub fn div(&self, a: &Jet, b: &Jet) -> Result<Jet> {
        let n = a.len().min(b.len());
        if n == 0 {
            return Ok(Jet(Vec::new()));
        }
        if b.0[0].is_zero() {
            return Err(Error::EvaluationAtPole);
        }
        let mut out: Vec<BigFloat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = a.0[k].clone();
            for j in 1..=k {
                s = s.sub(&b.0[j].mul(&out[k - j], self.p, RM), self.p, RM);
            }
            out.push(s.div(&b.0[0], self.p, RM));
        }
        Ok(Jet(out))
    }

    pub fn exp(&mut self, f: &Jet) -> Jet {
        let n = f.len();
        if n == 0 {
            return Jet(Vec::new());
        }
        let mut out = vec![f.0[0].exp(self.p, RM, &mut self.cc)];
        for k in 1..n {
            let mut s = self.int(0);
            for j in 1..=k {
                let t = f.0[j]
                    .mul(&out[k - j], self.p, RM)
                    .mul(&self.int(j as i64), self.p, RM);
                s = s.add(&t, self.p, RM);
            }
            out.push(s.div(&self.int(k as i64), self.p, RM));
        }
        Jet(out)
    }

    /// Natural log of a jet with positive value.
    pub fn ln(&mut self, f: &Jet) -> Result<Jet> {
        let n = f.len();
        if n == 0 {
            return Ok(Jet(Vec::new()));
        }
        if !f.0[0].is_positive() {
            return Err(Error::EvaluationAtPole);
        }
        let mut out = vec![f.0[0].ln(self.p, RM, &mut self.cc)];
        for k in 1..n {
            let mut s = self.int(0);
            for j in 1..k {
                let t = out[j]
                    .mul(&f.0[k - j], self.p, RM)
                    .mul(&self.int(j as i64), self.p, RM);
                s = s.add(&t, self.p, RM);
            }
            let s = s.div(&self.int(k as i64), self.p, RM);
            out.push(f.0[k].sub(&s, self.p, RM).div(&f.0[0], self.p, RM));
        }
        Ok(Jet(out))
    }

    /// `d/dx`, one coefficient shorter.
    pub fn derivative(&self, f: &Jet) -> Jet {
        Jet((1..f.len())
            .map(|k| f.0[k].mul(&self.int(k as i64), self.p, RM))
            .collect())
    }

    /// Antiderivative with value `c` at `x0`, one coefficient longer.
    pub fn integral(&self, f: &Jet, c: BigFloat) -> Jet {
        let mut v = vec![c];
        for (k, x) in f.0.iter().enumerate() {
            v.push(x.div(&self.int(k as i64 + 1), self.p, RM));
        }
        Jet(v)
    }

    /// Taylor coefficients of `r` at `x0`, exact over Q, then rounded once.
    pub fn xrat(&mut self, r: &XRat, pt: &Point, n: usize) -> Result<Jet> {
        let series = xrat_series(r, pt, n)?;
        Ok(Jet(series.iter().map(|c| self.rational(c)).collect()))
    }

    /// `sum exp(s x^2) x^(p + q a0) r(x)`.
    pub fn state(&mut self, s: &StateSum, pt: &Point, n: usize) -> Result<Jet> {
        let x = self.var(&pt.x, n);
        let lnx = self.ln(&x)?;
        let x2 = self.mul(&x, &x);
        let mut acc = self.constant(self.int(0), n);
        for t in s.terms() {
            let gs = self.rational(&t.s);
            let g = self.exp(&self.scale(&x2, &gs));
            let beta =
                self.rational(&(t.b.p.clone() + Rational::from_integer(t.b.q.into()) * &pt.a));
            let pw = self.exp(&self.scale(&lnx, &beta));
            let r = self.xrat(&t.r, pt, n)?;
            let term = self.mul(&self.mul(&g, &pw), &r);
            acc = self.add(&acc, &term);
        }
        Ok(acc)
    }

    /// `g + f I` with `I' = 1/anchor^2` and `I(x0) = c`.
    pub fn second(
        &mut self,
        s: &SecondKindState,
        pt: &Point,
        n: usize,
        c: &BigFloat,
    ) -> Result<Jet> {
        let anchor = self.state(s.anchor(), pt, n)?;
        let sq = self.mul(&anchor, &anchor);
        let integrand = self.div(&self.constant(self.int(1), n), &sq)?;
        let i = self.integral(&integrand, c.clone()).truncate(n);
        let g = self.state(&s.g, pt, n)?;
        let f = self.state(&s.f, pt, n)?;
        Ok(self.add(&g, &self.mul(&f, &i)))
    }

    pub fn any_state(&mut self, s: &State, pt: &Point, n: usize, c: &BigFloat) -> Result<Jet> {
        match s {
            State::First(f) => self.state(f, pt, n),
            State::Second(t) => self.second(t, pt, n, c),
        }
    }

    pub fn op(&mut self, d: &DiffOperator, pt: &Point, n: usize) -> Result<NumOp> {
        let coeffs = d
            .coeffs()
            .iter()
            .map(|c| self.xrat(c, pt, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(NumOp { coeffs })
    }

    /// `sum c_k D^k f`, shortened by the order.
    pub fn apply(&self, op: &NumOp, f: &Jet) -> Jet {
        let order = op.coeffs.len().saturating_sub(1);
        let n = f.len().saturating_sub(order);
        let mut acc = self.constant(self.int(0), n);
        let mut df = f.clone();
        for (k, c) in op.coeffs.iter().enumerate() {
            if k > 0 {
                df = self.derivative(&df);
            }
            let term = self.mul(c, &df).truncate(n);
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// `p(H) f` with `p` specialized at `a0`.
    pub fn apply_poly(
        &mut self,
        p: &Poly<AlphaRat>,
        h: &NumOp,
        f: &Jet,
        pt: &Point,
    ) -> Result<Jet> {
        let mut acc: Option<Jet> = None;
        for c in p.coeffs().iter().rev() {
            let c = self.rational(&eval_alpha(c, &pt.a)?);
            let term = self.scale(f, &c);
            acc = Some(match acc {
                None => term,
                Some(a) => {
                    let ha = self.apply(h, &a);
                    self.add(&ha, &term)
                }
            });
        }
        Ok(acc.unwrap_or_else(|| self.constant(self.int(0), f.len())))
    }

    /// Random jet with coefficients in `[-1, 1]`.
    pub fn random(&mut self, rng: &mut impl Rng, n: usize) -> Jet {
        Jet((0..n)
            .map(|_| self.rational(&q(rng.gen_range(-1000..=1000), 1000)))
            .collect())
    }

    /// `max |l - r| / max(|l|, |r|, |s| for s in scale)` over the common length.
    pub fn residual(&self, l: &Jet, r: &Jet, scale: &[&Jet]) -> BigFloat {
        let n = l.len().min(r.len());
        let l = l.clone().truncate(n);
        let r = r.clone().truncate(n);
        let diff = self.sub(&l, &r).norm();
        let mut m = l.norm();
        for s in [&r].into_iter().chain(scale.iter().copied()) {
            let v = s.clone().truncate(n).norm();
            if v.cmp(&m) == Some(1) {
                m = v;
            }
        }
        if m.is_zero() {
            return diff;
        }
        diff.div(&m, self.p, RM)
    }

    pub fn below(&mut self, v: &BigFloat, bound: &str) -> bool {
        let b = self.parse(bound);
        matches!(v.cmp(&b).map(|c| c.cmp(&0)), Some(Ordering::Less))
    }
}

/// Coefficient jets of a differential operator at one point.
#[derive(Clone, Debug)]
pub struct NumOp {
    pub coeffs: Vec<Jet>,
}

/// The operators of one seed type at one point, with the fourth-order
/// ladders applied as their three factors in turn and `H` taken from its
/// closed-form potential.
pub struct NumModel {
    pub h_plus: NumOp,
    pub a: NumOp,
    pub a_dag: NumOp,
    pub big_a: NumOp,
    pub big_a_dag: NumOp,
    pub h: NumOp,
    pub energy: BigFloat,
}

impl NumModel {
    pub fn new(num: &mut Num, m: &Model, pt: &Point, n: usize) -> Result<Self> {
        let energy = num.rational(&eval_alpha(&m.energy, &pt.a)?);
        Ok(NumModel {
            h_plus: num.op(&m.h_plus, pt, n)?,
            a: num.op(&m.a, pt, n)?,
            a_dag: num.op(&m.a_dag, pt, n)?,
            big_a: num.op(&m.big_a, pt, n)?,
            big_a_dag: num.op(&m.big_a_dag, pt, n)?,
            h: num.op(&schrodinger(closed_form_potential(m.ty)), pt, n)?,
            energy,
        })
    }

    pub fn b(&self, num: &Num, f: &Jet) -> Jet {
        let t = num.apply(&self.big_a_dag, f);
        let t = num.apply(&self.a, &t);
        num.apply(&self.big_a, &t)
    }

    pub fn b_dag(&self, num: &Num, f: &Jet) -> Jet {
        let t = num.apply(&self.big_a_dag, f);
        let t = num.apply(&self.a_dag, &t);
        num.apply(&self.big_a, &t)
    }

    pub fn ladder(&self, num: &Num, raising: bool, f: &Jet) -> Jet {
        if raising {
            self.b_dag(num, f)
        } else {
            self.b(num, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_ln_roundtrip() {
        let mut num = Num::new().unwrap();
        let x = num.var(&q(3, 2), 8);
        let l = num.ln(&x).unwrap();
        let e = num.exp(&l);
        assert!(num.below(&num.residual(&e, &x, &[]), "1e-35"));
    }

    #[test]
    fn derivative_of_product_rule() {
        let mut num = Num::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = num.random(&mut rng, 10);
        let g = num.random(&mut rng, 10);
        let lhs = num.derivative(&num.mul(&f, &g));
        let rhs = num.add(
            &num.mul(&num.derivative(&f), &g),
            &num.mul(&f, &num.derivative(&g)),
        );
        assert!(num.below(&num.residual(&lhs, &rhs, &[]), "1e-35"));
    }

    #[test]
    fn integral_inverts_derivative() {
        let mut num = Num::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = num.random(&mut rng, 9);
        let back = num.derivative(&num.integral(&f, num.int(7)));
        assert!(num.below(&num.residual(&back, &f, &[]), "1e-35"));
    }

    #[test]
    fn points_avoid_seed_zeros() {
        for ty in SeedType::ALL {
            let pts = sample_points(ty, 5, 9);
            assert_eq!(pts.len(), 5);
            for p in pts {
                assert!(!p.a.is_integer());
                assert!(eval_xrat_exact(&f_poly(ty), &p.x, &p.a).unwrap().abs() >= q(1, 4));
            }
        }
    }
}
