//! Closed forms exactly as they appear in print, transcribed verbatim so the
//! computed objects can be compared against them.

use num_traits::Zero;

use super::SeedType;
use crate::arith::{parse_nh, parse_poly, parse_xrat, AlphaRat, NHPoly, Poly, Ring, XRat};

pub fn s_source(ty: SeedType) -> &'static str {
    match ty {
        SeedType::I => "(1+2H-a)(1+H+a)(3+H+a)",
        SeedType::II => "(-1+2H-a)(-3+H+a)(-1+H+a)",
        SeedType::III => "(1+H-a)(3+H-a)(1+2H+a)",
    }
}

pub fn r_source(ty: SeedType) -> &'static str {
    match ty {
        SeedType::I => "(H-1-a)(H-1+a)(H+1+a)(H+4+a)/4",
        SeedType::II => "(H-1-a)(H-5+a)(H-3+a)(H-1+a)/4",
        SeedType::III => "(H-a-1)(H+1-a)(H+3-a)(H-1+a)/4",
    }
}

pub fn s(ty: SeedType) -> Poly<AlphaRat> {
    parse_poly(s_source(ty), "H").expect("static expression")
}

pub fn r(ty: SeedType) -> Poly<AlphaRat> {
    parse_poly(r_source(ty), "H").expect("static expression")
}

pub fn fn_source(ty: SeedType) -> &'static str {
    match ty {
        SeedType::I => {
            "2n H^3 + 3n(2+n+a) H^2 + 2n(1+n(3+n)) H \
             - n/2 + n^4/2 + n^3(2+a) + n^2(2+3a)/2 - a(3+2a(3+a))/2"
        }
        SeedType::II => {
            "2n H^3 + 3n(-4+n+a) H^2 + (2n(10+(n-6)n) + 3(n-3)n a) H \
             - 19n/2 + n^4/2 + n^2(20-9a)/2 + n^3(a-4) + n a(9-2(a-3)a)/2"
        }
        SeedType::III => {
            "2n H^3 + 3n(2+n-a) H^2 + 2n(1+n(3+n)) H \
             - n/2 + n^4/2 + n^2(2-3a)/2 - n^3(-2+a) + n a(3+2(-3+a)a)/2"
        }
    }
}

pub fn gn_source(ty: SeedType) -> &'static str {
    match ty {
        SeedType::I => {
            "-2n H^3 + 3n(-4+n-a) H^2 + (-2n(10+(n-6)n) + 3(n-3)n a) H \
             - 19n/2 + n^4/2 - n^3(4+a) + n^2(20+9a)/2 + n a(-9+2a(3+a))/2"
        }
        SeedType::II => {
            "-2n H^3 + 3n(2+n-a) H^2 + (-2n(1+n(3+n)) + 3n(1+n)a) H \
             - n/2 + n^4/2 + n^2(2-3a)/2 - n^3(a-2) + n a(3+2(-3+a)a)/2"
        }
        SeedType::III => {
            "-2n H^3 + 3n(-4+n+a) H^2 \
             - 19n/2 + n^4/2 + n^2(20-9a)/2 + n^3(a-4) + n a(9-2(a-3)a)/2"
        }
    }
}

pub fn f_n(ty: SeedType) -> NHPoly {
    parse_nh(fn_source(ty)).expect("static expression")
}

pub fn g_n(ty: SeedType) -> NHPoly {
    parse_nh(gn_source(ty)).expect("static expression")
}

/// Potential of the deformed Hamiltonian in its printed closed form, which
/// uses one formula for all three types.
pub fn h_minus_potential_source(ty: SeedType) -> String {
    let f = match ty {
        SeedType::I => "(2+x^2+2a)",
        SeedType::II => "(-2+x^2+2a)",
        SeedType::III => "(-2-x^2+2a)",
    };
    format!("x^2/4 + (3+4a(2+a))/(4x^2) - 1 + 8x^2/{f}^2 - 4/{f}")
}

pub fn h_minus_potential(ty: SeedType) -> XRat {
    parse_xrat(&h_minus_potential_source(ty)).expect("static expression")
}

fn half(x: &AlphaRat) -> AlphaRat {
    x.times(&AlphaRat::from(crate::arith::rat(1, 2)))
}

fn q(n: i64, d: i64) -> AlphaRat {
    AlphaRat::from(crate::arith::rat(n, d))
}

/// Printed `a_0..a_13` for step `a` and `b = [b0, b1, b2, b3]`. The table
/// leaves `a_2` out; it is filled with zero here.
pub fn a_table(a: &AlphaRat, b: &[AlphaRat; 4]) -> [AlphaRat; 14] {
    let [b0, b1, b2, b3] = b.clone();
    let a2 = a.times(a);
    let a3 = a2.times(a);
    let two = AlphaRat::int(2);
    let three = AlphaRat::int(3);
    let six = AlphaRat::int(6);
    [
        AlphaRat::zero(),
        b3.clone(),
        AlphaRat::zero(),
        half(&three.times(a).times(&b3).negate().plus(&two.times(&b2))),
        q(3, 2).times(a).times(&b3),
        AlphaRat::zero(),
        half(
            &a2.times(&b3)
                .plus(&two.times(&b1))
                .minus(&two.times(a).times(&b2)),
        ),
        half(
            &three
                .times(&a2)
                .times(&b3)
                .negate()
                .plus(&two.times(a).times(&b2)),
        ),
        a2.times(&b3),
        AlphaRat::zero(),
        q(1, 6).times(
            &six.times(&b0)
                .minus(&three.times(a).times(&b1))
                .plus(&a2.times(&b2)),
        ),
        q(1, 4).times(
            &a3.times(&b3)
                .plus(&two.times(a).times(&b1))
                .minus(&two.times(&a2).times(&b2)),
        ),
        q(1, 6).times(
            &three
                .times(&a3)
                .times(&b3)
                .negate()
                .plus(&two.times(&a2).times(&b2)),
        ),
        q(1, 4).times(&a3).times(&b3),
    ]
}

/// Printed `d_0..d_13`.
pub fn d_table(a: &AlphaRat, b: &[AlphaRat; 4]) -> [AlphaRat; 14] {
    let [b0, b1, b2, b3] = b.clone();
    let a2 = a.times(a);
    let a3 = a2.times(a);
    let two = AlphaRat::int(2);
    let three = AlphaRat::int(3);
    let six = AlphaRat::int(6);
    [
        AlphaRat::zero(),
        b3.clone(),
        AlphaRat::zero(),
        q(-3, 2).times(a).times(&b3),
        q(3, 2).times(a).times(&b3),
        AlphaRat::zero(),
        half(
            &a2.times(&b3)
                .negate()
                .minus(&two.times(&b1))
                .minus(&two.times(a).times(&b2)),
        ),
        half(&three.times(&a2).times(&b3).plus(&two.times(a).times(&b2))),
        a2.times(&b3).negate(),
        AlphaRat::zero(),
        q(1, 6).times(
            &six.times(&b0)
                .negate()
                .minus(&three.times(a).times(&b1))
                .minus(&a2.times(&b2)),
        ),
        q(1, 4).times(
            &a3.times(&b3)
                .plus(&two.times(a).times(&b1))
                .plus(&two.times(&a2).times(&b2)),
        ),
        q(1, 6).times(
            &three
                .times(&a3)
                .times(&b3)
                .negate()
                .minus(&two.times(&a2).times(&b2)),
        ),
        q(1, 4).times(&a3).times(&b3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_printed_forms_parse() {
        for ty in SeedType::ALL {
            assert_eq!(s(ty).degree(), Some(3));
            assert_eq!(r(ty).degree(), Some(4));
            assert_eq!(f_n(ty).degree(), Some(3));
            assert_eq!(g_n(ty).degree(), Some(3));
            h_minus_potential(ty);
        }
    }

    #[test]
    fn printed_table_at_step_two() {
        let b = [
            AlphaRat::int(0),
            AlphaRat::int(0),
            AlphaRat::int(0),
            AlphaRat::int(1),
        ];
        let t = a_table(&AlphaRat::int(2), &b);
        assert_eq!(t[4], AlphaRat::int(3));
        assert_eq!(d_table(&AlphaRat::int(2), &b)[13], AlphaRat::int(2));
    }
}
