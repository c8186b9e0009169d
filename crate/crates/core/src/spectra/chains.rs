//! Induced chains and second-kind states.

use serde::Serialize;

use super::{label, shifted, Ladder, State, WeightedState};
use num_traits::One;

use crate::arith::AlphaRat;
use crate::error::{Error, Result};
use crate::model::{fn_eval, gn_eval, CubicAlgebraData, Model};
use crate::space::{SecondKindState, StateSum};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    /// Ladder that generates the chain.
    pub fn ladder(&self) -> Ladder {
        match self {
            Direction::Up => Ladder::BDag,
            Direction::Down => Ladder::B,
        }
    }

    /// `f` on up-chains, `g` on down-chains.
    pub fn coeff_kind(&self) -> char {
        match self {
            Direction::Up => 'f',
            Direction::Down => 'g',
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            _ => Err(Error::Parse(format!(
                "direction must be up or down, got {s:?}"
            ))),
        }
    }
}

/// The opposite ladder on element `n`, compared with `coefficient * element (n-1)`.
#[derive(Clone, Debug)]
pub struct BackAction {
    pub n: u32,
    /// `f_n` or `g_n` at the base weight.
    pub predicted: AlphaRat,
    /// Exact ratio of the image to element `n - 1`, if proportional.
    pub computed: Option<AlphaRat>,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct Chain {
    pub start: WeightedState,
    pub direction: Direction,
    /// Element 0 is the start.
    pub elements: Vec<WeightedState>,
    pub back: Vec<BackAction>,
    /// Index at which the generating ladder returned zero.
    pub truncated_at: Option<usize>,
}

impl Chain {
    /// Every element is an eigenstate at `start.weight ± 2n`.
    pub fn weights_hold(&self, m: &Model) -> bool {
        self.elements.iter().enumerate().all(|(n, e)| {
            e.weight
                == shifted(
                    &self.start.weight,
                    self.direction.ladder().step() * n as i64,
                )
                && e.holds(&m.h)
        })
    }

    pub fn back_actions_hold(&self) -> bool {
        self.back.iter().all(|b| b.holds)
    }
}

fn kind_of(s: &State) -> &'static str {
    if s.is_second_kind() {
        "tilde"
    } else {
        "psi"
    }
}

/// `(B^dagger)^n` or `B^n` applied to `start`, with the opposite ladder checked
/// against the chain coefficients at every step.
pub fn build_chain(
    m: &Model,
    data: &CubicAlgebraData,
    start: &WeightedState,
    dir: Direction,
    n: u32,
) -> Result<Chain> {
    if start.is_generalized() {
        return Err(Error::Unsupported(format!(
            "chain from generalized state {}",
            start.label
        )));
    }
    let gen = dir.ladder().operator(m);
    let back_op = dir.ladder().opposite().operator(m);
    let base = &start.weight;
    let mut elements = vec![start.clone()];
    let mut back = Vec::new();
    let mut truncated_at = None;
    for k in 1..=n {
        let prev = elements.last().expect("nonempty");
        let next = prev.state.apply(gen).simplified();
        if next.is_zero() {
            truncated_at = Some(k as usize);
            break;
        }
        let w = shifted(base, dir.ladder().step() * k as i64);
        let img = next.apply(back_op);
        let predicted = match dir {
            Direction::Up => fn_eval(data, k, base),
            Direction::Down => gn_eval(data, k, base),
        };
        let holds = img
            .sub(&prev.state.scale(&predicted))
            .is_some_and(|d| d.is_zero());
        back.push(BackAction {
            n: k,
            predicted,
            computed: img.ratio_to(&prev.state),
            holds,
        });
        elements.push(WeightedState::eigen(label(kind_of(&next), &w), next, w));
    }
    Ok(Chain {
        start: start.clone(),
        direction: dir,
        elements,
        back,
        truncated_at,
    })
}

/// `psi * I_psi` at the weight of `ws`, verified as an exact eigenstate.
pub fn second_kind(ws: &WeightedState) -> Result<WeightedState> {
    let psi = match ws.state.simplified() {
        State::First(s) if !ws.is_generalized() => s,
        _ => {
            return Err(Error::Unsupported(format!(
                "second-kind partner of {}",
                ws.label
            )))
        }
    };
    let t = SecondKindState::partner(&psi)?;
    Ok(WeightedState::eigen(
        label("tilde", &ws.weight),
        State::Second(t),
        ws.weight.clone(),
    ))
}

/// Checks `second_kind` output against `h`.
pub fn verify_second_kind(m: &Model, t: &WeightedState) -> Result<()> {
    if t.holds(&m.h) {
        Ok(())
    } else {
        Err(Error::StructuralViolation(format!(
            "{} is not an eigenstate",
            t.label
        )))
    }
}

/// `psi * tilde' - psi' * tilde`.
pub fn wronskian(psi: &StateSum, tilde: &SecondKindState) -> State {
    let a = tilde.mul_state(&psi.derivative());
    let b = tilde.derivative().mul_state(psi);
    State::Second(b.sub(&a)).simplified()
}

/// True when the Wronskian is exactly the constant 1.
pub fn wronskian_is_one(psi: &StateSum, tilde: &SecondKindState) -> bool {
    match wronskian(psi, tilde) {
        State::First(w) => w == StateSum::from_xrat(crate::arith::XRat::one()),
        State::Second(_) => false,
    }
}
