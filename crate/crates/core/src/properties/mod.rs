//! Property instances with decompositions, sub-verifiers, and exact
//! distance oracles.

pub mod bp;
pub mod eulerian;
pub mod kmono;
pub mod parity;
