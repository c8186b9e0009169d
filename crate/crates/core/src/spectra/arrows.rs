//! Diagonal arrows out of second-kind states, and the ladder images of the
//! generalized zero modes.

use num_traits::Zero;

use super::fixtures;
use super::{label, shifted, Ladder, Spectrum, WeightedState};
use crate::arith::{parse_alpha, AlphaRat, Field, Ring};
use crate::error::{Error, Result};
use crate::model::{Model, Status};
use crate::space::StateSum;

fn w(s: &str) -> AlphaRat {
    parse_alpha(s).expect("static expression")
}

/// `op tilde(from) = coefficient psi(to)`.
#[derive(Clone, Debug)]
pub struct DiagonalArrow {
    pub from: String,
    pub op: Ladder,
    pub to: String,
    /// `None` when the image is not proportional to the target.
    pub coefficient: Option<AlphaRat>,
    pub printed: Option<String>,
    /// Label as printed, when it differs.
    pub printed_from: Option<String>,
    pub status: Status,
}

fn named<'s>(sp: &'s Spectrum, l: &str) -> Result<&'s WeightedState> {
    sp.named
        .get(l)
        .or_else(|| sp.tildes.get(l))
        .ok_or_else(|| Error::StructuralViolation(format!("no state {l}")))
}

/// Every printed diagonal arrow, recomputed. The anchor's own arrow must vanish,
/// which makes the image independent of the antiderivative constant.
pub fn diagonal_arrows(m: &Model, sp: &Spectrum) -> Result<Vec<DiagonalArrow>> {
    let mut out = Vec::new();
    for a in fixtures::diagonal_arrows(m.ty) {
        let from = label("tilde", &w(a.from));
        let to = label("psi", &w(a.to));
        let anchor = named(sp, &label("psi", &w(a.from)))?;
        let op = a.op.operator(m);
        if !anchor.state.apply(op).is_zero() {
            return Err(Error::StructuralViolation(format!(
                "{} on the anchor of {from} does not vanish",
                a.op
            )));
        }
        let img = named(sp, &from)?.state.apply(op).simplified();
        let target = &named(sp, &to)?.state;
        let coefficient = img.ratio_to(target).filter(|c| !c.is_zero());
        let status = match (&coefficient, a.coeff) {
            (None, _) => Status::Fail,
            (Some(_), None) => Status::Pass,
            (Some(c), Some(p)) => {
                if *c == w(p) {
                    Status::Pass
                } else {
                    Status::PrintedMismatch
                }
            }
        };
        out.push(DiagonalArrow {
            from,
            op: a.op,
            to,
            coefficient,
            printed: a.coeff.map(str::to_string),
            printed_from: a.printed_from.map(|s| label("tilde", &w(s))),
            status,
        });
    }
    Ok(out)
}

/// One eigen-component of a ladder image.
#[derive(Clone, Debug)]
pub struct Component {
    pub label: String,
    pub weight: AlphaRat,
    /// Coefficient relative to the catalogued state, when there is one.
    pub coefficient: Option<AlphaRat>,
    pub state: StateSum,
}

#[derive(Clone, Debug)]
pub struct LadderImage {
    pub op: Ladder,
    pub components: Vec<Component>,
    pub printed_support: Vec<AlphaRat>,
    pub status: Status,
}

impl LadderImage {
    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct GeneralizedRelation {
    pub label: String,
    pub mode: String,
    pub weight: AlphaRat,
    /// `(label, coefficient)` of the companion in the catalogue.
    pub companion: Option<(String, AlphaRat)>,
    pub printed_h: String,
    /// `(weight, coefficient)` with `H psi = weight psi + coefficient companion`
    /// for the printed companion, when such a pair exists.
    pub in_printed_basis: Option<(AlphaRat, AlphaRat)>,
    pub h_status: Status,
    pub images: Vec<LadderImage>,
}

/// Splits `v` into eigen-components at the given distinct weights.
fn project(
    h: &crate::operator::DiffOperator,
    v: &StateSum,
    weights: &[AlphaRat],
) -> Option<Vec<(AlphaRat, StateSum)>> {
    let mut out = Vec::new();
    let mut total = StateSum::zero();
    for (i, wi) in weights.iter().enumerate() {
        let mut c = v.clone();
        for (j, wj) in weights.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = wi.minus(wj);
            c = h.apply(&c).sub(&c.scale(wj)).scale(&d.inverse());
        }
        if c.is_zero() {
            continue;
        }
        if !h.apply(&c).sub(&c.scale(wi)).is_zero() {
            return None;
        }
        total = total.add(&c);
        out.push((wi.clone(), c));
    }
    (total == *v).then_some(out)
}

fn catalogue(sp: &Spectrum, weight: &AlphaRat, s: &StateSum) -> (String, Option<AlphaRat>) {
    let l = label("psi", weight);
    if let Some(ws) = sp.named.get(&l) {
        if let Some(c) = ws.first().and_then(|t| s.ratio_to(t)) {
            return (l, Some(c));
        }
    }
    (l, None)
}

/// `H` and both ladders on every generalized zero mode with a printed relation.
pub fn generalized_arrows(m: &Model, sp: &Spectrum) -> Result<Vec<GeneralizedRelation>> {
    let mut out = Vec::new();
    for g in fixtures::generalized_relations(m.ty) {
        let mode = sp
            .mode(g.mode)
            .ok_or_else(|| Error::StructuralViolation(format!("zero mode {} not found", g.mode)))?;
        let lab = fixtures::generalized_names(m.ty)
            .into_iter()
            .find(|(n, _)| *n == g.mode)
            .map_or_else(|| g.mode.to_string(), |(_, l)| l);
        let psi = mode.psi();
        let pw = w(g.h_weight);
        let (cw, cc) = (w(g.h_companion.0), w(g.h_companion.1));
        let comp = named(sp, &label("psi", &cw))?
            .first()
            .ok_or_else(|| Error::StructuralViolation("companion is second kind".into()))?;
        let printed_rhs = psi.scale(&pw).add(&comp.scale(&cc));
        let in_printed_basis =
            crate::space::solve_combination(&[psi.clone(), comp.clone()], &m.h.apply(psi))
                .filter(|s| s.nullspace.is_empty())
                .map(|s| (s.particular[0].clone(), s.particular[1].clone()));
        let h_status = Status::from_bool(m.h.apply(psi) == printed_rhs);
        let h_status = if h_status == Status::Fail {
            Status::PrintedMismatch
        } else {
            h_status
        };
        let companion = mode.state.companion.as_ref().map(|c| {
            let cs = c.state.first().expect("first kind").scale(&c.coefficient);
            let (l, r) = catalogue(sp, &c.state.weight, &cs);
            (l, r.unwrap_or_else(|| c.coefficient.clone()))
        });
        let weight = mode.state.weight.clone();
        let mut ws: Vec<AlphaRat> = Vec::new();
        let mut cands = vec![shifted(&weight, -2), shifted(&weight, 2)];
        if let Some(c) = &mode.state.companion {
            cands.push(shifted(&c.state.weight, -2));
            cands.push(shifted(&c.state.weight, 2));
        }
        cands.extend(g.support.iter().map(|s| w(s)));
        for c in cands {
            if !ws.contains(&c) {
                ws.push(c);
            }
        }
        let mut images = Vec::new();
        for op in [Ladder::B, Ladder::BDag] {
            let v = op.operator(m).apply(psi);
            let printed_support: Vec<AlphaRat> = if op == g.zero {
                Vec::new()
            } else {
                g.support.iter().map(|s| w(s)).collect()
            };
            let parts = project(&m.h, &v, &ws).ok_or_else(|| {
                Error::StructuralViolation(format!(
                    "{op} {lab} is outside the constructed weight spaces"
                ))
            })?;
            let components: Vec<Component> = parts
                .into_iter()
                .map(|(wt, s)| {
                    let (l, c) = catalogue(sp, &wt, &s);
                    Component {
                        label: l,
                        weight: wt,
                        coefficient: c,
                        state: s,
                    }
                })
                .collect();
            let mut got: Vec<&AlphaRat> = components.iter().map(|c| &c.weight).collect();
            let mut want: Vec<&AlphaRat> = printed_support.iter().collect();
            got.sort_by_key(|a| a.to_string());
            want.sort_by_key(|a| a.to_string());
            let status = if got == want {
                Status::Pass
            } else {
                Status::PrintedMismatch
            };
            images.push(LadderImage {
                op,
                components,
                printed_support,
                status,
            });
        }
        out.push(GeneralizedRelation {
            label: lab,
            mode: g.mode.to_string(),
            weight,
            companion,
            in_printed_basis,
            printed_h: format!(
                "({}) {} + ({}) {}",
                g.h_weight,
                g.mode,
                g.h_companion.1,
                label("psi", &cw)
            ),
            h_status,
            images,
        });
    }
    Ok(out)
}
