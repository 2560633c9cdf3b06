//! Threshold degree, the sampler it induces, and the Forrelation quantity.

pub mod forrelation;
pub mod function;
pub mod thrdeg;
pub mod upp;

pub use forrelation::{forrelation_phi, forrelation_phi_fast};
pub use function::PartialBooleanFunction;
pub use thrdeg::{dual_certificate, sign_representation, threshold_degree, DualCertificate, SignPolynomial, ThresholdDegree};
pub use upp::{upp_sampler, UppSampler};
