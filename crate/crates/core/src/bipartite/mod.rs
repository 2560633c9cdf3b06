//! Bounded-degree graphs, lazy walks and the bipartiteness verifier.

pub mod generate;
pub mod graph;
pub mod verify;
pub mod walk;

pub use generate::{gen_bipartite_expander, gen_far_nonbipartite, random_regular_graph, CertifiedGraph, GraphCertificate};
pub use graph::BoundedDegreeGraph;
pub use verify::{bipartite_params, bipartite_verify, BipartiteParams, BipartiteVerifier};
pub use walk::{lazy_walk, rapid_mixing_check, walk_length, WalkOutcome};
