use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::ring::rat_floor;
use crate::arith::{AlphaRat, Field, Rational, Ring, XRat};
use crate::error::{Error, Result};

/// Power of `x` written as `p + q*a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Exponent {
    pub p: Rational,
    pub q: i64,
}

impl Exponent {
    pub fn new(p: Rational, q: i64) -> Self {
        Exponent { p, q }
    }

    pub fn zero() -> Self {
        Exponent::new(Rational::zero(), 0)
    }

    pub fn value(&self) -> AlphaRat {
        AlphaRat::linear(self.p.clone(), Rational::from_integer(self.q.into()))
    }
}

/// Combination class of a term: terms with equal keys add into one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Key {
    /// Gaussian weight in `exp(s*x^2)`.
    pub s: Rational,
    /// Fractional part of the rational exponent, in `[0, 1)`.
    pub p: Rational,
    pub q: i64,
}

impl Key {
    pub fn new(s: Rational, p: Rational, q: i64) -> Self {
        let fl = Rational::from_integer(p.floor().to_integer());
        Key { s, p: p - fl, q }
    }

    pub fn exponent(&self) -> Exponent {
        Exponent::new(self.p.clone(), self.q)
    }

    fn combine(&self, other: &Key) -> (Key, i64) {
        let p = &self.p + &other.p;
        let carry = rat_floor(&p);
        (Key::new(&self.s + &other.s, p, self.q + other.q), carry)
    }
}

/// One term `exp(s*x^2) * x^b * r(x)`.
#[derive(Clone, PartialEq, Debug)]
pub struct QTerm {
    pub s: Rational,
    pub b: Exponent,
    pub r: XRat,
}

/// Finite sum of quasi-rational terms, one per key, sorted by key.
#[derive(Clone, PartialEq, Default)]
pub struct StateSum {
    terms: BTreeMap<Key, XRat>,
}

impl StateSum {
    pub fn zero() -> Self {
        StateSum::default()
    }

    /// `exp(s*x^2) * x^b * r`; the integer part of `b.p` moves into `r`.
    pub fn term(s: Rational, b: Exponent, r: XRat) -> Self {
        let shift = rat_floor(&b.p);
        let key = Key::new(s, b.p, b.q);
        Self::from_key(key, r.mul_x_pow(shift))
    }

    pub fn from_key(key: Key, r: XRat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(key, r);
        }
        StateSum { terms }
    }

    pub fn from_xrat(r: XRat) -> Self {
        Self::term(Rational::zero(), Exponent::zero(), r)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.terms.keys()
    }

    pub fn get(&self, key: &Key) -> Option<&XRat> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &XRat)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> Vec<QTerm> {
        self.terms
            .iter()
            .map(|(k, r)| QTerm {
                s: k.s.clone(),
                b: k.exponent(),
                r: r.clone(),
            })
            .collect()
    }

    /// The sole term of a one-term sum.
    pub fn single(&self) -> Option<(&Key, &XRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn insert_add(terms: &mut BTreeMap<Key, XRat>, k: Key, r: XRat) {
        if r.is_zero() {
            return;
        }
        match terms.get_mut(&k) {
            Some(acc) => {
                let sum = acc.plus(&r);
                if sum.is_zero() {
                    terms.remove(&k);
                } else {
                    *acc = sum;
                }
            }
            None => {
                terms.insert(k, r);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, r) in &rhs.terms {
            Self::insert_add(&mut terms, k.clone(), r.clone());
        }
        StateSum { terms }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|r| r.negate())
    }

    pub fn scale(&self, c: &AlphaRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.map_terms(|r| r.scale(c))
    }

    pub fn mul_xrat(&self, f: &XRat) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        self.map_terms(|r| r.times(f))
    }

    fn map_terms(&self, f: impl Fn(&XRat) -> XRat) -> Self {
        let mut terms = BTreeMap::new();
        for (k, r) in &self.terms {
            Self::insert_add(&mut terms, k.clone(), f(r));
        }
        StateSum { terms }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (k1, r1) in &self.terms {
            for (k2, r2) in &rhs.terms {
                let (k, carry) = k1.combine(k2);
                Self::insert_add(&mut terms, k, r1.times(r2).mul_x_pow(carry));
            }
        }
        StateSum { terms }
    }

    /// `d/dx`, term by term: `(2 s x + b/x) r + r'`.
    pub fn derivative(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (k, r) in &self.terms {
            let mut d = r.derivative();
            if !k.s.is_zero() {
                d = d.plus(&r.mul_x_pow(1).scale(&AlphaRat::from_rational(&k.s + &k.s)));
            }
            let b = k.exponent().value();
            if !b.is_zero() {
                d = d.plus(&r.mul_x_pow(-1).scale(&b));
            }
            Self::insert_add(&mut terms, k.clone(), d);
        }
        StateSum { terms }
    }

    /// `1/self` for a single-term sum.
    pub fn recip(&self) -> Result<Self> {
        let (k, r) = self
            .single()
            .ok_or_else(|| Error::Unsupported("reciprocal of a multi-term state".into()))?;
        let neg = Key::new(-k.s.clone(), -k.p.clone(), -k.q);
        // -p lies in (-1, 0]; Key::new folds it back into [0, 1)
        let shift = rat_floor(&-k.p.clone());
        Ok(Self::from_key(neg, r.try_inverse()?.mul_x_pow(shift)))
    }

    /// `c` with `self = c * other`, if the two are proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<AlphaRat> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(AlphaRat::zero());
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut c: Option<AlphaRat> = None;
        for (k, r) in &self.terms {
            let o = other.terms.get(k)?;
            let q = r.divide(o).as_constant()?;
            match &c {
                None => c = Some(q),
                Some(c0) if *c0 == q => {}
                Some(_) => return None,
            }
        }
        c
    }

    /// Scales so the first term's numerator is monic in `x`.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(r) => self.scale(&r.num().lead().inverse()),
            None => self.clone(),
        }
    }
}

impl fmt::Debug for StateSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateSum({self})")
    }
}

fn fmt_exponent(e: &Exponent) -> String {
    let p = if e.p.is_zero() {
        None
    } else {
        Some(e.p.to_string())
    };
    let q = match e.q {
        0 => None,
        1 => Some("a".to_string()),
        -1 => Some("-a".to_string()),
        q => Some(format!("{q}*a")),
    };
    match (p, q) {
        (None, None) => "0".into(),
        (Some(p), None) => p,
        (None, Some(q)) => q,
        (Some(p), Some(q)) => match q.strip_prefix('-') {
            Some(rest) => format!("{p} - {rest}"),
            None => format!("{p} + {q}"),
        },
    }
}

impl fmt::Display for StateSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, r) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = r.to_string();
            let body = if r.is_polynomial() {
                format!("({body})")
            } else {
                body
            };
            write!(
                f,
                "exp({}*x^2) * x^({}) * {}",
                k.s,
                fmt_exponent(&k.exponent()),
                body
            )?;
        }
        Ok(())
    }
}

impl One for StateSum {
    fn one() -> Self {
        StateSum::from_xrat(XRat::one())
    }
}

impl Zero for StateSum {
    fn zero() -> Self {
        StateSum::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::ops::Add for StateSum {
    type Output = StateSum;
    fn add(self, rhs: StateSum) -> StateSum {
        StateSum::add(&self, &rhs)
    }
}

impl std::ops::Mul for StateSum {
    type Output = StateSum;
    fn mul(self, rhs: StateSum) -> StateSum {
        StateSum::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, XPoly};

    fn gauss_half() -> StateSum {
        StateSum::term(rat(-1, 4), Exponent::new(rat(1, 2), 0), XRat::one())
    }

    #[test]
    fn derivative_of_gaussian_times_sqrt() {
        let d = gauss_half().derivative();
        // 1/(2x) - x/2
        let expect = XRat::x_pow(-1)
            .scale(&AlphaRat::from_rational(rat(1, 2)))
            .plus(&XRat::x().scale(&AlphaRat::from_rational(rat(-1, 2))));
        assert_eq!(
            d,
            StateSum::term(rat(-1, 4), Exponent::new(rat(1, 2), 0), expect)
        );
    }

    #[test]
    fn constant_has_zero_derivative() {
        assert!(StateSum::from_xrat(XRat::one()).derivative().is_zero());
    }

    #[test]
    fn integer_exponent_shift_combines() {
        let a = StateSum::term(rat(0, 1), Exponent::new(rat(3, 2), 1), XRat::one());
        let b = StateSum::term(rat(0, 1), Exponent::new(rat(1, 2), 1), XRat::x());
        assert_eq!(a.len(), 1);
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn recip_times_self_is_one() {
        let r = XRat::from_poly(XPoly::new(vec![
            AlphaRat::int(2),
            AlphaRat::zero(),
            AlphaRat::one(),
        ]));
        let s = StateSum::term(rat(1, 4), Exponent::new(rat(1, 2), 1), r);
        assert_eq!(s.mul(&s.recip().unwrap()), StateSum::one());
    }

    #[test]
    fn ratio_detects_scalar_multiple() {
        let g = gauss_half();
        let c = AlphaRat::linear(rat(1, 1), rat(2, 1));
        assert_eq!(g.scale(&c).ratio_to(&g), Some(c));
        assert_eq!(g.add(&StateSum::one()).ratio_to(&g), None);
    }

    #[test]
    fn display_form() {
        assert_eq!(gauss_half().to_string(), "exp(-1/4*x^2) * x^(1/2) * (1)");
    }
}
