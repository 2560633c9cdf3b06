//! Query-model laboratory for proofs of proximity.
//!
//! Verifiers run against [`oracle::CountingOracle`]s that count every
//! coordinate read. Quantum subroutines (amplitude amplification and
//! collision finding) are simulated by exact closed-form models and charged
//! to a separate modeled-query counter, so every run reports both the
//! classical reads it actually made and the quantum cost it stands for.
//!
//! Module map:
//! - [`oracle`], [`amplify`], [`collision`]: the query model.
//! - [`protocol`]: decompositions, precision sampling, and the generic
//!   verifiers built on them.
//! - [`properties`]: parity, k-monotonicity, branching programs, Eulerian
//!   orientations.
//! - [`codes`]: Hadamard code over F_3, the Booleanity MAP, binary linear
//!   codes and k-wise independence.
//! - [`bipartite`]: bounded-degree graphs, lazy walks, and the bipartiteness
//!   verifier.
//! - [`lowerbound`]: threshold degree by LP, the UPP sampler, Forrelation.
//! - [`harness`]: experiment configuration, estimation, sweeps, CSV.

pub mod amplify;
pub mod bipartite;
pub mod codes;
pub mod collision;
pub mod config;
pub mod error;
pub mod harness;
pub mod lowerbound;
pub mod oracle;
pub mod properties;
pub mod protocol;
pub mod rng;
pub mod trace;

pub use config::Constants;
pub use error::{Error, Result};
pub use trace::{Verdict, VerdictTrace};
