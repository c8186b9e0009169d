//! Zero modes of the fourth-order ladders by the factorized cascade, and
//! quasi-rational eigenstates by direct ansatz.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::fixtures::{self, PrintedState, Source};
use super::{label, second_kind, Companion, Ladder, State, WeightedState};
use crate::arith::{parse_alpha, rat, AlphaRat, Field, Rational, Ring, XRat};
use crate::error::{Error, Result};
use crate::model::{Discrepancy, Model, SeedType, Status};
use crate::operator::DiffOperator;
use crate::space::{combine, solve_combination, Exponent, Key, StateSum};

/// Lowest power of `x` in the ansatz, relative to `x^(1/2 + q a)`.
const LOW: i64 = -4;

/// Numerator degree bound, from `XLADDER_ANSATZ_DEGREE` (default 8).
pub fn ansatz_degree() -> i64 {
    std::env::var("XLADDER_ANSATZ_DEGREE")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|d: &i64| *d >= 0)
        .unwrap_or(8)
}

fn keys() -> Vec<(Rational, i64)> {
    let mut out = Vec::new();
    for s in [rat(-1, 4), rat(1, 4)] {
        for q in [-1, 1] {
            out.push((s.clone(), q));
        }
    }
    out
}

/// `exp(s x^2) x^(1/2 + i + q a) / den` for `i` in the ansatz window.
fn basis(key: &(Rational, i64), den: &XRat, hi: i64) -> Vec<StateSum> {
    (LOW..=hi)
        .map(|i| {
            let e = Exponent::new(rat(1, 2) + Rational::from_integer(i.into()), key.1);
            StateSum::term(key.0.clone(), e, den.clone())
        })
        .collect()
}

fn key_of(key: &(Rational, i64)) -> Key {
    Key::new(key.0.clone(), rat(1, 2), key.1)
}

/// Kernel of `op` inside the ansatz.
fn kernel(op: &DiffOperator, den: &XRat, hi: i64) -> Vec<StateSum> {
    let mut out = Vec::new();
    for key in keys() {
        let b = basis(&key, den, hi);
        let images: Vec<StateSum> = b.iter().map(|s| op.apply(s)).collect();
        if let Some(sol) = solve_combination(&images, &StateSum::zero()) {
            out.extend(sol.nullspace.iter().map(|v| combine(&b, v)));
        }
    }
    out
}

/// Some `psi` in the ansatz with `op psi = target`.
fn preimage(op: &DiffOperator, target: &StateSum, den: &XRat, hi: i64) -> Option<StateSum> {
    let mut out = StateSum::zero();
    for (k, r) in target.iter() {
        let key = keys().into_iter().find(|c| key_of(c) == *k)?;
        let b = basis(&key, den, hi);
        let images: Vec<StateSum> = b.iter().map(|s| op.apply(s)).collect();
        let part = StateSum::from_key(k.clone(), r.clone());
        let sol = solve_combination(&images, &part)?;
        out = out.add(&combine(&b, &sol.particular));
    }
    Some(out)
}

/// Ansatz denominator `F_J`.
fn f_den(ty: SeedType) -> XRat {
    crate::model::f_poly(ty)
        .try_inverse()
        .expect("F is nonzero")
}

/// Numerator coordinates of a one-term state relative to `x^(1/2+q a)/F`.
fn coords(f: &XRat, s: &StateSum) -> Option<(Key, BTreeMap<i64, AlphaRat>)> {
    let (k, r) = s.single()?;
    let t = r.times(f);
    let den = t.den();
    let m = den.degree()?;
    if den.low_degree() != Some(m) {
        return None;
    }
    let lead = den.lead();
    let mut out = BTreeMap::new();
    for (i, c) in t.num().coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.insert(i as i64 - m as i64, c.divide(&lead));
        }
    }
    Some((k.clone(), out))
}

/// Reduces each state against the earlier ones of the same key, clearing
/// the coordinate at which the earlier state starts.
fn reduce(f: &XRat, states: &mut [StateSum]) {
    for i in 0..states.len() {
        for j in 0..i {
            let (Some((ki, ci)), Some((kj, cj))) = (coords(f, &states[i]), coords(f, &states[j]))
            else {
                continue;
            };
            if ki != kj {
                continue;
            }
            let Some((lo, pivot)) = cj.iter().next() else {
                continue;
            };
            if let Some(c) = ci.get(lo) {
                let c = c.divide(pivot);
                states[i] = states[i].sub(&states[j].scale(&c));
            }
        }
    }
}

/// One zero mode with its classification.
#[derive(Clone, Debug)]
pub struct ZeroMode {
    pub name: String,
    /// Cascade stage, 1..=3.
    pub stage: usize,
    pub state: WeightedState,
    /// `raw = ratio * printed` when a printed form matches.
    pub printed_ratio: Option<AlphaRat>,
}

impl ZeroMode {
    pub fn psi(&self) -> &StateSum {
        self.state.first().expect("zero modes are first kind")
    }
}

fn stage_name(which: Ladder, stage: usize) -> String {
    let l = match which {
        Ladder::B => "a",
        Ladder::BDag => "a^dagger",
    };
    match stage {
        1 => "A^dagger psi = 0".into(),
        2 => format!("{l} A^dagger psi = 0"),
        _ => format!("A {l} A^dagger psi = 0"),
    }
}

fn exhausted(which: Ladder, stage: usize) -> Error {
    Error::AnsatzExhausted {
        stage: stage_name(which, stage),
    }
}

/// Raw cascade solutions `(stage, state)`.
fn cascade(m: &Model, which: Ladder, hi: i64) -> Result<Vec<(usize, StateSum)>> {
    let fden = f_den(m.ty);
    let one = XRat::one();
    let l = match which {
        Ladder::B => &m.a,
        Ladder::BDag => &m.a_dag,
    };
    let mut out = Vec::new();
    let s1 = kernel(&m.big_a_dag, &fden, hi);
    if s1.len() != 1 {
        return Err(exhausted(which, 1));
    }
    out.push((1, s1[0].clone()));
    let chis = kernel(l, &one, hi);
    if chis.len() != 2 {
        return Err(exhausted(which, 2));
    }
    for chi in &chis {
        let psi = preimage(&m.big_a_dag, chi, &fden, hi).ok_or_else(|| exhausted(which, 2))?;
        out.push((2, psi));
    }
    let chi = preimage(l, &m.seed, &one, hi).ok_or_else(|| exhausted(which, 3))?;
    let psi = preimage(&m.big_a_dag, &chi, &fden, hi).ok_or_else(|| exhausted(which, 3))?;
    out.push((3, psi));
    Ok(out)
}

/// Matches a state against printed candidates; returns `(index, ratio, printed state)`.
fn match_printed(s: &StateSum, printed: &[PrintedState]) -> Option<(usize, AlphaRat, StateSum)> {
    for (i, p) in printed.iter().enumerate() {
        for cand in p.candidates() {
            if let Some(c) = s.ratio_to(&cand) {
                return Some((i, c, cand));
            }
        }
    }
    None
}

/// The four zero modes of `B` (lowering) or `B^dagger` (raising), reduced,
/// aligned with the printed normalization where one matches, and classified
/// by the exact action of `H` on their span.
pub fn zero_modes(m: &Model, which: Ladder) -> Result<Vec<ZeroMode>> {
    let raw = cascade(m, which, ansatz_degree())?;
    let f = crate::model::f_poly(m.ty);
    let mut states: Vec<StateSum> = raw.iter().map(|(_, s)| s.clone()).collect();
    reduce(&f, &mut states);
    let op = which.operator(m);
    for s in &states {
        if !op.apply(s).is_zero() {
            return Err(Error::StructuralViolation(format!(
                "cascade state not annihilated by {which}"
            )));
        }
    }
    let printed = fixtures::zero_modes(m.ty, which);
    let prefix = match which {
        Ladder::B => "psi",
        Ladder::BDag => "phi",
    };
    let mut modes: Vec<(usize, String, usize, StateSum, Option<AlphaRat>)> = Vec::new();
    for (k, s) in states.iter().enumerate() {
        let stage = raw[k].0;
        match match_printed(s, &printed) {
            Some((i, c, cand)) => {
                modes.push((i, printed[i].name.to_string(), stage, cand, Some(c)))
            }
            None => modes.push((
                printed.len() + k,
                format!("{prefix}_{}", printed.len() + k + 1),
                stage,
                s.normalized(),
                None,
            )),
        }
    }
    modes.sort_by_key(|t| t.0);
    let basis: Vec<StateSum> = modes.iter().map(|t| t.3.clone()).collect();
    let mut out = Vec::new();
    for (k, (_, name, stage, s, ratio)) in modes.iter().enumerate() {
        let hs = m.h.apply(s);
        let coeffs = solve_combination(&basis, &hs)
            .filter(|sol| sol.nullspace.is_empty())
            .ok_or_else(|| {
                Error::StructuralViolation(format!("H does not preserve the kernel of {which}"))
            })?
            .particular;
        let others: Vec<usize> = (0..basis.len())
            .filter(|&j| j != k && !coeffs[j].is_zero())
            .collect();
        if others.len() > 1 {
            return Err(Error::StructuralViolation(format!(
                "{name} has more than one companion"
            )));
        }
        let companion = others.first().map(|&j| Companion {
            state: Box::new(WeightedState::eigen(
                modes[j].1.clone(),
                State::First(basis[j].clone()),
                coeffs[j].clone(),
            )),
            coefficient: coeffs[j].clone(),
        });
        out.push(ZeroMode {
            name: name.clone(),
            stage: *stage,
            state: WeightedState {
                label: name.clone(),
                state: State::First(s.clone()),
                weight: coeffs[k].clone(),
                companion,
            },
            printed_ratio: ratio.clone(),
        });
    }
    // the companion's own weight is its diagonal entry
    let weights: BTreeMap<String, AlphaRat> = out
        .iter()
        .map(|z| (z.name.clone(), z.state.weight.clone()))
        .collect();
    for z in &mut out {
        if let Some(c) = &mut z.state.companion {
            c.state.weight = weights[&c.state.label].clone();
        }
    }
    Ok(out)
}

/// Quasi-rational eigenstates of `H` at `weight` inside the ansatz.
pub fn solve_polynomial_eigenstate(m: &Model, weight: &AlphaRat) -> Result<WeightedState> {
    let op = m.h.shift(&weight.negate());
    let found = kernel(&op, &f_den(m.ty), ansatz_degree());
    let s = found
        .first()
        .ok_or_else(|| Error::NoQuasiRationalEigenstate {
            weight: weight.to_string(),
        })?;
    Ok(WeightedState::eigen(
        label("psi", weight),
        State::First(s.normalized()),
        weight.clone(),
    ))
}

/// A raising mode proportional to a lowering one: `phi = ratio psi`.
#[derive(Clone, Debug)]
pub struct Coincidence {
    pub raising: String,
    pub lowering: String,
    pub ratio: AlphaRat,
}

pub fn coincidences(lowering: &[ZeroMode], raising: &[ZeroMode]) -> Vec<Coincidence> {
    let mut out = Vec::new();
    for r in raising {
        for l in lowering {
            if let Some(c) = r.psi().ratio_to(l.psi()) {
                out.push(Coincidence {
                    raising: r.name.clone(),
                    lowering: l.name.clone(),
                    ratio: c,
                });
            }
        }
    }
    out
}

/// Everything one type needs for its 2-chain description.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub ty: SeedType,
    pub lowering: Vec<ZeroMode>,
    pub raising: Vec<ZeroMode>,
    /// Added eigenstates, aligned with print where possible.
    pub added: Vec<WeightedState>,
    /// First-chain states keyed by label `psi(w)`.
    pub named: BTreeMap<String, WeightedState>,
    /// Second-kind partners keyed by label `tilde(w)`.
    pub tildes: BTreeMap<String, WeightedState>,
    /// Generalized zero modes under their diagram labels.
    pub generalized: Vec<WeightedState>,
}

fn weight_of(s: &str) -> AlphaRat {
    parse_alpha(s).expect("static expression")
}

impl Spectrum {
    pub fn build(m: &Model) -> Result<Spectrum> {
        let lowering = zero_modes(m, Ladder::B)?;
        let raising = zero_modes(m, Ladder::BDag)?;
        let mut added = Vec::new();
        let mut added_by_name = BTreeMap::new();
        for (w, printed) in fixtures::added_states(m.ty) {
            let w = weight_of(w);
            let mut ws = solve_polynomial_eigenstate(m, &w)?;
            if let Some(s) = ws.first().cloned() {
                if let Some((_, _, cand)) = match_printed(&s, std::slice::from_ref(&printed)) {
                    ws.state = State::First(cand);
                }
            }
            added_by_name.insert(printed.name, ws.clone());
            added.push(ws);
        }
        let mode = |name: &str| -> Result<&ZeroMode> {
            lowering
                .iter()
                .chain(&raising)
                .find(|z| z.name == name)
                .ok_or_else(|| Error::StructuralViolation(format!("zero mode {name} not found")))
        };
        let mut named = BTreeMap::new();
        let mut tildes = BTreeMap::new();
        for (w, src) in fixtures::named_states(m.ty) {
            let w = weight_of(w);
            let s = match src {
                Source::Mode(n) => mode(n)?.psi().clone(),
                Source::Added(n) => added_by_name[n].first().expect("first kind").clone(),
            };
            let ws = WeightedState::eigen(label("psi", &w), State::First(s), w.clone());
            if !ws.holds(&m.h) {
                return Err(Error::StructuralViolation(format!(
                    "{} is not an eigenstate",
                    ws.label
                )));
            }
            let t = second_kind(&ws)?;
            tildes.insert(t.label.clone(), t);
            named.insert(ws.label.clone(), ws);
        }
        let mut generalized = Vec::new();
        for (name, lab) in fixtures::generalized_names(m.ty) {
            let mut ws = mode(name)?.state.clone();
            ws.label = lab;
            generalized.push(ws);
        }
        Ok(Spectrum {
            ty: m.ty,
            lowering,
            raising,
            added,
            named,
            tildes,
            generalized,
        })
    }

    pub fn mode(&self, name: &str) -> Option<&ZeroMode> {
        self.lowering
            .iter()
            .chain(&self.raising)
            .find(|z| z.name == name)
    }

    /// Comparisons of the solver output with the printed zero-mode data.
    pub fn printed_checks(&self, m: &Model) -> Vec<Discrepancy> {
        let ty = self.ty;
        let mut out = Vec::new();
        for (which, list) in [(Ladder::B, &self.lowering), (Ladder::BDag, &self.raising)] {
            out.push(Discrepancy {
                location: format!("zero modes of {which} ({ty}): count"),
                printed: Some("4".into()),
                computed: list.len().to_string(),
                status: Status::from_bool(list.len() == 4),
            });
            for p in fixtures::zero_modes(ty, which) {
                let found = list.iter().find(|z| z.name == p.name);
                let computed = match found {
                    Some(z) => z.psi().to_string(),
                    None => "absent".into(),
                };
                out.push(Discrepancy {
                    location: format!("{} ({ty}) closed form", p.name),
                    printed: Some(p.r.to_string()),
                    computed,
                    status: if found.is_some_and(|z| z.printed_ratio.is_some()) {
                        Status::Pass
                    } else {
                        Status::PrintedMismatch
                    },
                });
            }
        }
        for a in fixtures::h_actions(ty) {
            let Some(z) = self.mode(a.name) else { continue };
            let mut rhs = z.psi().scale(&a.weight());
            let mut printed = format!("H {} = ({}) {}", a.name, a.weight, a.name);
            if let Some((cn, cc)) = a.companion {
                let c = weight_of(cc);
                if let Some(cz) = self.mode(cn) {
                    rhs = rhs.add(&cz.psi().scale(&c));
                }
                printed.push_str(&format!(" + ({cc}) {cn}"));
            }
            let lhs = m.h.apply(z.psi());
            let ok = lhs == rhs;
            let computed = match &z.state.companion {
                None => format!("H {} = ({}) {}", a.name, z.state.weight, a.name),
                Some(c) => format!(
                    "H {} = ({}) {} + ({}) {}",
                    a.name, z.state.weight, a.name, c.coefficient, c.state.label
                ),
            };
            out.push(Discrepancy {
                location: format!("H on {} ({ty})", a.name),
                printed: Some(printed),
                computed,
                status: if ok {
                    Status::Pass
                } else {
                    Status::PrintedMismatch
                },
            });
        }
        for (phi, psi, c) in fixtures::printed_coincidences(ty) {
            let (Some(a), Some(b)) = (self.mode(phi), self.mode(psi)) else {
                continue;
            };
            let r = a.psi().ratio_to(b.psi());
            let want = weight_of(c);
            out.push(Discrepancy {
                location: format!("{phi} = c {psi} ({ty})"),
                printed: Some(c.to_string()),
                computed: r
                    .as_ref()
                    .map_or("not proportional".into(), |r| r.to_string()),
                status: if r == Some(want) {
                    Status::Pass
                } else {
                    Status::PrintedMismatch
                },
            });
        }
        for ((w, p), ws) in fixtures::added_states(ty).into_iter().zip(&self.added) {
            let matched = ws
                .first()
                .is_some_and(|s| match_printed(s, std::slice::from_ref(&p)).is_some());
            out.push(Discrepancy {
                location: format!("added state at {w} ({ty})"),
                printed: Some(p.r.to_string()),
                computed: ws.state.to_string(),
                status: if matched {
                    Status::Pass
                } else {
                    Status::PrintedMismatch
                },
            });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_clears_pivot() {
        let f = crate::model::f_poly(SeedType::I);
        let fi = f.try_inverse().unwrap();
        let e = Exponent::new(rat(-1, 2), -1);
        let a = StateSum::term(rat(-1, 4), e.clone(), fi.clone());
        let b = StateSum::term(
            rat(-1, 4),
            e,
            fi.times(&crate::arith::parse_xrat("3 + x^2").unwrap()),
        );
        let mut v = vec![a, b];
        reduce(&f, &mut v);
        let (_, c) = coords(&f, &v[1]).unwrap();
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn degree_default() {
        if std::env::var("XLADDER_ANSATZ_DEGREE").is_err() {
            assert_eq!(ansatz_degree(), 8);
        }
    }
}
