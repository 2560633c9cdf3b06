pub mod build;
pub mod config;
pub mod estimate;
pub mod instance;
pub mod report;
pub mod stats;
pub mod sweep;

pub use build::{build_instance, Built, PROTOCOLS};
pub use config::{ExperimentConfig, KRule};
pub use estimate::{estimate, search_adversary, AdversaryMode, AdversaryResult, ProofPolicy, EXHAUSTIVE_LIMIT};
pub use instance::Instance;
pub use report::{ReportRow, CSV_HEADER};
pub use sweep::{query_sweep, SweepResult};
