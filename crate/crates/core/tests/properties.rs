use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;
use xladder::arith::{rat, AlphaPoly, AlphaRat, Field, Poly, Rational, Ring, XPoly, XRat};
use xladder::model::{
    cubic_algebra, generic_chain_coeffs, oscillator_eigenstate, shift_poly, CubicAlgebraData,
    Model, SeedType,
};
use xladder::operator::DiffOperator;
use xladder::spectra::{wronskian_is_one, Ladder, Spectrum, State};
use xladder::verify::at_n;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn alpha_rat() -> impl Strategy<Value = AlphaRat> {
    (
        prop::collection::vec(small_rational(), 0..3),
        prop::collection::vec(small_rational(), 1..3),
    )
        .prop_filter_map("zero denominator", |(n, d)| {
            AlphaRat::new(AlphaPoly::new(n), AlphaPoly::new(d)).ok()
        })
}

fn x_poly() -> impl Strategy<Value = XPoly> {
    prop::collection::vec(alpha_rat(), 0..3).prop_map(Poly::new)
}

fn x_rat() -> impl Strategy<Value = XRat> {
    (x_poly(), x_poly()).prop_filter_map("zero denominator", |(n, d)| XRat::new(n, d).ok())
}

fn operator() -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec(x_rat(), 1..3).prop_map(DiffOperator::new)
}

fn structure() -> impl Strategy<Value = (AlphaRat, [AlphaRat; 4])> {
    (
        small_rational().prop_filter("nonzero step", |r| !r.is_zero()),
        prop::array::uniform4(small_rational()),
    )
        .prop_map(|(a, b)| (AlphaRat::from(a), b.map(AlphaRat::from)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn alpha_field_axioms(a in alpha_rat(), b in alpha_rat(), c in alpha_rat()) {
        prop_assert_eq!((&a + &b) + c.clone(), &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(a.times(&a.inverse()), AlphaRat::one());
        }
    }

    #[test]
    fn xrat_canonical_form(p in x_poly(), q in x_poly(), r in x_poly()) {
        prop_assume!(!q.is_zero() && !r.is_zero());
        let direct = XRat::new(p.clone(), q.clone()).unwrap();
        let padded = XRat::new(p.mul(&r), q.mul(&r)).unwrap();
        prop_assert_eq!(direct, padded);
    }

    #[test]
    fn xrat_field_axioms(a in x_rat(), b in x_rat(), c in x_rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a / &a, XRat::one());
        }
    }

    #[test]
    fn specialization_is_homomorphism(a in alpha_rat(), b in alpha_rat(), n in 1i64..40, d in 1i64..7) {
        let a0 = rat(2 * n + 1, 2 * d + 1);
        if let (Ok(x), Ok(y)) = (a.eval(&a0), b.eval(&a0)) {
            prop_assert_eq!((&a + &b).eval(&a0).unwrap(), &x + &y);
            prop_assert_eq!((&a * &b).eval(&a0).unwrap(), &x * &y);
        }
    }

    #[test]
    fn operator_ring_axioms(p in operator(), q in operator(), r in operator()) {
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert_eq!(p.compose(&q.add(&r)), p.compose(&q).add(&p.compose(&r)));
        prop_assert_eq!(p.commutator(&q), q.commutator(&p).neg());
        let jacobi = p.commutator(&q.commutator(&r))
            .add(&q.commutator(&r.commutator(&p)))
            .add(&r.commutator(&p.commutator(&q)));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn application_respects_composition(p in operator(), q in operator(), nu in 0u32..4) {
        let s = oscillator_eigenstate(nu);
        prop_assert_eq!(p.compose(&q).apply(&s), p.apply(&q.apply(&s)));
    }

    #[test]
    fn h_polynomial_roundtrip(c in prop::collection::vec(alpha_rat(), 1..4)) {
        let h = &model(SeedType::I).h;
        let d = DiffOperator::polynomial_in(h, &c);
        let back = d.as_h_polynomial(h, 4).unwrap();
        prop_assert_eq!(DiffOperator::polynomial_in(h, &back), d);
    }

    #[test]
    fn chain_coefficients_telescope((a, b) in structure(), n in 0u32..6) {
        let t = generic_chain_coeffs(&a, &b);
        let s = Poly::new(b.to_vec());
        let step_n = a.times(&AlphaRat::int(n.into()));
        prop_assert_eq!(at_n(&t.f_poly(), n + 1).sub(&at_n(&t.f_poly(), n)), shift_poly(&s, &step_n));
        prop_assert_eq!(at_n(&t.g_poly(), n + 1).sub(&at_n(&t.g_poly(), n)), shift_poly(&s, &step_n.negate()).neg());
    }
}

struct Fixture {
    model: Model,
    data: CubicAlgebraData,
    spectrum: Spectrum,
}

fn model(ty: SeedType) -> &'static Model {
    &fixture(ty).model
}

fn fixture(ty: SeedType) -> &'static Fixture {
    static CELLS: [OnceLock<Fixture>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let i = SeedType::ALL.iter().position(|&t| t == ty).unwrap();
    CELLS[i].get_or_init(|| {
        let model = Model::new(ty);
        let data = cubic_algebra(&model).unwrap();
        let spectrum = Spectrum::build(&model).unwrap();
        Fixture {
            model,
            data,
            spectrum,
        }
    })
}

fn seed_type() -> impl Strategy<Value = SeedType> {
    prop::sample::select(SeedType::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn zero_modes_are_annihilated(ty in seed_type(), i in 0usize..4, raising: bool) {
        let fx = fixture(ty);
        let (modes, ladder) = if raising {
            (&fx.spectrum.raising, Ladder::BDag)
        } else {
            (&fx.spectrum.lowering, Ladder::B)
        };
        prop_assert_eq!(modes.len(), 4);
        let zm = &modes[i];
        prop_assert!(zm.state.state.apply(ladder.operator(&fx.model)).is_zero());
        prop_assert!(zm.state.holds(&fx.model.h));
    }

    #[test]
    fn closure_roots_match_zero_modes(ty in seed_type(), i in 0usize..4, raising: bool) {
        let fx = fixture(ty);
        let zm = if raising { &fx.spectrum.raising[i] } else { &fx.spectrum.lowering[i] };
        prop_assume!(!zm.state.is_generalized());
        let r = if raising { &fx.data.r_raised } else { &fx.data.r };
        prop_assert!(r.eval(&zm.state.weight).is_zero());
    }

    #[test]
    fn ladders_shift_weight_by_two(ty in seed_type(), i in 0usize..16, raising: bool) {
        let fx = fixture(ty);
        let states: Vec<_> = fx.spectrum.named.values().filter(|w| !w.is_generalized()).collect();
        let ws = states[i % states.len()];
        let ladder = if raising { Ladder::BDag } else { Ladder::B };
        let image = ws.state.apply(ladder.operator(&fx.model));
        let target = ws.weight.plus(&AlphaRat::int(ladder.step()));
        prop_assert!(image.eigen_residual(&fx.model.h, &target).is_zero());
    }

    #[test]
    fn tilde_wronskian_is_one(ty in seed_type(), i in 0usize..8) {
        let fx = fixture(ty);
        let tildes: Vec<_> = fx.spectrum.tildes.values().collect();
        let t = tildes[i % tildes.len()];
        prop_assert!(t.holds(&fx.model.h));
        let State::Second(tilde) = &t.state else {
            return Err(TestCaseError::fail("tilde state is first kind"));
        };
        prop_assert!(wronskian_is_one(tilde.anchor(), tilde));
    }
}
