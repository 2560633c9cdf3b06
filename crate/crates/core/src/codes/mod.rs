//! Linear-code machinery: the Hadamard code over F_3 with local testing and
//! decoding, the Booleanity MAP, binary linear codes, and k-wise
//! independence.

pub mod booleanity;
pub mod f3;
pub mod hadamard;
pub mod kwise;
pub mod linear;
