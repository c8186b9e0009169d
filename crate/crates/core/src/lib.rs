//! Exact symbolic engine for the fourth-order ladder operators of the X1
//! exceptional Laguerre Hamiltonians (types I, II, III): operators, zero
//! modes, induced chains, and second-kind states, all over Q(a)(x).

pub mod arith;
pub mod error;
pub mod model;
pub mod numeric;
pub mod operator;
pub mod space;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
