//! Zero modes, added eigenstates, induced chains, second-kind states and the
//! ladder diagrams built from them.

mod arrows;
mod chains;
mod diagram;
pub mod fixtures;
mod zero_modes;

pub use arrows::{
    diagonal_arrows, generalized_arrows, Component, DiagonalArrow, GeneralizedRelation, LadderImage,
};
pub use chains::{
    build_chain, second_kind, verify_second_kind, wronskian, wronskian_is_one, BackAction, Chain,
    Direction,
};
pub use diagram::{
    chain_diagram, compare_window, Action, ChainDiagram, DiagramEdge, DiagramNode, EdgeCoeff,
    WindowCheck,
};
pub use zero_modes::{
    ansatz_degree, coincidences, solve_polynomial_eigenstate, zero_modes, Coincidence, Spectrum,
    ZeroMode,
};

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{AlphaRat, Ring};
use crate::model::Model;
use crate::operator::DiffOperator;
use crate::space::{SecondKindState, StateSum};

/// The two fourth-order ladders.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Ladder {
    #[serde(rename = "B")]
    B,
    #[serde(rename = "Bdag")]
    BDag,
}

impl Ladder {
    pub fn operator<'m>(&self, m: &'m Model) -> &'m DiffOperator {
        match self {
            Ladder::B => &m.b,
            Ladder::BDag => &m.b_dag,
        }
    }

    /// Weight change under the ladder.
    pub fn step(&self) -> i64 {
        match self {
            Ladder::B => -2,
            Ladder::BDag => 2,
        }
    }

    pub fn opposite(&self) -> Ladder {
        match self {
            Ladder::B => Ladder::BDag,
            Ladder::BDag => Ladder::B,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Ladder::B => "B",
            Ladder::BDag => "Bdag",
        }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A first-kind state or a second-kind state `g + f I`.
#[derive(Clone, PartialEq, Debug)]
pub enum State {
    First(StateSum),
    Second(SecondKindState),
}

impl State {
    pub fn apply(&self, op: &DiffOperator) -> State {
        match self {
            State::First(s) => State::First(op.apply(s)),
            State::Second(s) => State::Second(op.apply(s)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            State::First(s) => s.is_zero(),
            State::Second(s) => s.is_zero(),
        }
    }

    /// Drops a vanishing `I`-part.
    pub fn simplified(&self) -> State {
        match self {
            State::Second(s) if s.is_first_kind() => State::First(s.g.clone()),
            other => other.clone(),
        }
    }

    pub fn is_second_kind(&self) -> bool {
        matches!(self.simplified(), State::Second(_))
    }

    pub fn scale(&self, c: &AlphaRat) -> State {
        match self {
            State::First(s) => State::First(s.scale(c)),
            State::Second(s) => State::Second(s.scale(c)),
        }
    }

    pub fn first(&self) -> Option<&StateSum> {
        match self {
            State::First(s) => Some(s),
            State::Second(_) => None,
        }
    }

    /// `self - other` when both live in the same space.
    pub fn sub(&self, other: &State) -> Option<State> {
        match (self.simplified(), other.simplified()) {
            (State::First(a), State::First(b)) => Some(State::First(a.sub(&b))),
            (State::Second(a), State::Second(b)) if a.anchor() == b.anchor() => {
                Some(State::Second(a.sub(&b)))
            }
            (State::Second(a), State::First(b)) => Some(State::Second(a.add_first_kind(&b.neg()))),
            (State::First(a), State::Second(b)) => Some(State::Second(
                b.scale(&AlphaRat::int(-1)).add_first_kind(&a),
            )),
            _ => None,
        }
    }

    /// `c` with `self = c * other`.
    pub fn ratio_to(&self, other: &State) -> Option<AlphaRat> {
        match (self.simplified(), other.simplified()) {
            (State::First(a), State::First(b)) => a.ratio_to(&b),
            (State::Second(a), State::Second(b)) if a.anchor() == b.anchor() => a.ratio_to(&b),
            (State::First(a), State::Second(_)) if a.is_zero() => Some(AlphaRat::zero()),
            _ => None,
        }
    }

    /// `H self - w self`.
    pub fn eigen_residual(&self, h: &DiffOperator, w: &AlphaRat) -> State {
        let hs = self.apply(h);
        hs.sub(&self.scale(w)).expect("same space")
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::First(s) => write!(f, "{s}"),
            State::Second(s) => write!(f, "{s}"),
        }
    }
}

/// `H psi = weight psi + coefficient companion`.
#[derive(Clone, Debug)]
pub struct Companion {
    pub state: Box<WeightedState>,
    pub coefficient: AlphaRat,
}

#[derive(Clone, Debug)]
pub struct WeightedState {
    pub label: String,
    pub state: State,
    pub weight: AlphaRat,
    pub companion: Option<Companion>,
}

impl WeightedState {
    pub fn eigen(label: impl Into<String>, state: State, weight: AlphaRat) -> Self {
        WeightedState {
            label: label.into(),
            state,
            weight,
            companion: None,
        }
    }

    pub fn is_generalized(&self) -> bool {
        self.companion.is_some()
    }

    /// Checks the defining relation against `h` exactly.
    pub fn holds(&self, h: &DiffOperator) -> bool {
        let res = self.state.eigen_residual(h, &self.weight);
        match &self.companion {
            None => res.is_zero(),
            Some(c) => res
                .sub(&c.state.state.scale(&c.coefficient))
                .is_some_and(|d| d.is_zero()),
        }
    }

    pub fn first(&self) -> Option<&StateSum> {
        self.state.first()
    }

    pub fn kind(&self) -> &'static str {
        match (&self.companion, self.state.is_second_kind()) {
            (Some(_), _) => "generalized",
            (None, true) => "second-kind",
            (None, false) => "eigenstate",
        }
    }
}

/// `psi(-a-3)`-style label for a weight.
pub fn label(kind: &str, w: &AlphaRat) -> String {
    format!("{kind}({})", w.to_string().replace(' ', ""))
}

/// `w + k`.
pub fn shifted(w: &AlphaRat, k: i64) -> AlphaRat {
    w.plus(&AlphaRat::int(k))
}
