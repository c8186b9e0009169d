//! Small recursive-descent reader for polynomial/rational expressions such as
//! `(1+2*H-a)*(1+H+a)/4` or `8*x^2/(2+x^2+2*a)^2`, evaluated into any ring.

use num_traits::Zero;

use super::alpha::AlphaRat;
use super::poly::Poly;
use super::ring::{parse_rational, Field, Rational, Ring};
use super::xrat::XRat;
use crate::error::{Error, Result};

/// How names, numbers and division map into the target ring.
pub trait ExprContext<R: Ring> {
    fn var(&self, name: &str) -> Option<R>;
    fn number(&self, r: Rational) -> R;
    fn divide(&self, num: &R, den: &R) -> Option<R>;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Name(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} in {src:?}"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a, R: Ring, C: ExprContext<R>> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a C,
    _r: std::marker::PhantomData<R>,
}

impl<R: Ring, C: ExprContext<R>> Parser<'_, R, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at token {}", self.pos)))
    }

    fn sum(&mut self) -> Result<R> {
        let mut acc = if self.eat('-') {
            self.product()?.negate()
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.product()?);
            } else if self.eat('-') {
                acc = acc.minus(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<R> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.times(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                match self.ctx.divide(&acc, &d) {
                    Some(q) => acc = q,
                    None => return self.err("unsupported division"),
                }
            } else if matches!(self.peek(), Some(Tok::Op('(')) | Some(Tok::Name(_))) {
                // implicit multiplication, e.g. `2(x+1)` or `n H`
                acc = acc.times(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<R> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?,
                _ => return self.err("expected integer exponent"),
            };
            self.pos += 1;
            Ok((0..e).fold(R::one(), |acc, _| acc.times(&base)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<R> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let r = parse_rational(&n).ok_or_else(|| Error::Parse(n.clone()))?;
                Ok(self.ctx.number(r))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                self.ctx
                    .var(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown name {name:?}")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.negate())
            }
            _ => self.err("unexpected token"),
        }
    }
}

/// Parses `src` into the ring described by `ctx`.
pub fn parse_expr<R: Ring, C: ExprContext<R>>(src: &str, ctx: &C) -> Result<R> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        ctx,
        _r: std::marker::PhantomData,
    };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Names accepted for the parameter.
fn is_alpha(name: &str) -> bool {
    name == "a" || name == "alpha"
}

struct AlphaCtx;

impl ExprContext<AlphaRat> for AlphaCtx {
    fn var(&self, name: &str) -> Option<AlphaRat> {
        is_alpha(name).then(AlphaRat::alpha)
    }
    fn number(&self, r: Rational) -> AlphaRat {
        AlphaRat::from_rational(r)
    }
    fn divide(&self, n: &AlphaRat, d: &AlphaRat) -> Option<AlphaRat> {
        (!d.is_zero()).then(|| n.divide(d))
    }
}

struct XCtx;

impl ExprContext<XRat> for XCtx {
    fn var(&self, name: &str) -> Option<XRat> {
        match name {
            "x" => Some(XRat::x()),
            n if is_alpha(n) => Some(XRat::constant(AlphaRat::alpha())),
            _ => None,
        }
    }
    fn number(&self, r: Rational) -> XRat {
        XRat::from_rational(r)
    }
    fn divide(&self, n: &XRat, d: &XRat) -> Option<XRat> {
        (!d.is_zero()).then(|| n.divide(d))
    }
}

/// Polynomials in one variable over Q(a), division by constants only.
struct UniCtx(&'static str);

impl ExprContext<Poly<AlphaRat>> for UniCtx {
    fn var(&self, name: &str) -> Option<Poly<AlphaRat>> {
        if name == self.0 {
            Some(Poly::var())
        } else if is_alpha(name) {
            Some(Poly::constant(AlphaRat::alpha()))
        } else {
            None
        }
    }
    fn number(&self, r: Rational) -> Poly<AlphaRat> {
        Poly::constant(AlphaRat::from_rational(r))
    }
    fn divide(&self, n: &Poly<AlphaRat>, d: &Poly<AlphaRat>) -> Option<Poly<AlphaRat>> {
        if !d.is_constant() || d.is_zero() {
            return None;
        }
        Some(n.scale(&d.coeff(0).inverse()))
    }
}

/// Polynomials in `H` whose coefficients are polynomials in `n` over Q(a).
struct NHCtx;

impl ExprContext<NHPoly> for NHCtx {
    fn var(&self, name: &str) -> Option<NHPoly> {
        match name {
            "H" => Some(Poly::var()),
            "n" => Some(Poly::constant(Poly::var())),
            n if is_alpha(n) => Some(Poly::constant(Poly::constant(AlphaRat::alpha()))),
            _ => None,
        }
    }
    fn number(&self, r: Rational) -> NHPoly {
        Poly::constant(Poly::constant(AlphaRat::from_rational(r)))
    }
    fn divide(&self, n: &NHPoly, d: &NHPoly) -> Option<NHPoly> {
        let c = d.coeff(0);
        if !d.is_constant() || !c.is_constant() || c.is_zero() {
            return None;
        }
        let inv = c.coeff(0).inverse();
        Some(n.map(|p| p.scale(&inv)))
    }
}

/// Polynomial in `H` with coefficients polynomial in `n`, over Q(a).
pub type NHPoly = Poly<Poly<AlphaRat>>;

/// Element of Q(a), e.g. `-4*a*(1+a)`.
pub fn parse_alpha(src: &str) -> Result<AlphaRat> {
    parse_expr(src, &AlphaCtx)
}

/// Rational function of `x` over Q(a).
pub fn parse_xrat(src: &str) -> Result<XRat> {
    parse_expr(src, &XCtx)
}

/// Polynomial in `var` over Q(a).
pub fn parse_poly(src: &str, var: &'static str) -> Result<Poly<AlphaRat>> {
    parse_expr(src, &UniCtx(var))
}

/// Polynomial in `H` and `n` over Q(a).
pub fn parse_nh(src: &str) -> Result<NHPoly> {
    parse_expr(src, &NHCtx)
}

/// Writes a polynomial in `var` so that [`parse_poly`] reads it back.
pub fn format_poly(p: &Poly<AlphaRat>, var: &str) -> String {
    let terms: Vec<String> = (0..p.coeffs().len())
        .rev()
        .filter(|&k| !p.coeff(k).is_zero())
        .map(|k| {
            let c = p.coeff(k);
            match k {
                0 => format!("({c})"),
                1 => format!("({c})*{var}"),
                _ => format!("({c})*{var}^{k}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Writes an [`NHPoly`] so that [`parse_nh`] reads it back.
pub fn format_nh(p: &NHPoly) -> String {
    let terms: Vec<String> = (0..p.coeffs().len())
        .rev()
        .filter(|&k| !p.coeff(k).is_zero())
        .map(|k| {
            let c = format_poly(&p.coeff(k), "n");
            match k {
                0 => format!("({c})"),
                1 => format!("({c})*H"),
                _ => format!("({c})*H^{k}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    struct Q;
    impl ExprContext<Rational> for Q {
        fn var(&self, name: &str) -> Option<Rational> {
            (name == "t").then(|| rat(3, 1))
        }
        fn number(&self, r: Rational) -> Rational {
            r
        }
        fn divide(&self, n: &Rational, d: &Rational) -> Option<Rational> {
            (!d.is_zero()).then(|| n.divide(d))
        }
    }

    #[test]
    fn precedence_and_powers() {
        assert_eq!(parse_expr("1 + 2*t^2 - (t-1)/4", &Q).unwrap(), rat(37, 2));
        assert_eq!(parse_expr("-t^2", &Q).unwrap(), rat(-9, 1));
        assert_eq!(parse_expr("2(t+1)", &Q).unwrap(), rat(8, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("1 + ", &Q).is_err());
        assert!(parse_expr("q", &Q).is_err());
        assert!(parse_expr("1/0", &Q).is_err());
    }
}

#[cfg(test)]
mod context_tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn alpha_and_x_contexts() {
        assert_eq!(
            parse_alpha("-4*a*(1+a)").unwrap(),
            AlphaRat::alpha().times(&AlphaRat::linear(rat(-4, 1), rat(-4, 1)))
        );
        let f = parse_xrat("8*x^2/(2+x^2+2*a)^2").unwrap();
        assert_eq!(f.num().degree(), Some(2));
        assert_eq!(f.den().degree(), Some(4));
    }

    #[test]
    fn nh_context_rejects_symbolic_division() {
        assert!(parse_nh("n/H").is_err());
        let p = parse_nh("2*n*H^3 - n/2").unwrap();
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn format_roundtrip() {
        let p = parse_poly("(1+2*H-a)*(1+H+a)*(3+H+a)/4 - 1/(1+a)", "H").unwrap();
        assert_eq!(parse_poly(&format_poly(&p, "H"), "H").unwrap(), p);
        let q = parse_nh("2n H^3 + 3n(2+n+a) H^2 - a(3+2a(3+a))/2").unwrap();
        assert_eq!(parse_nh(&format_nh(&q)).unwrap(), q);
    }
}
