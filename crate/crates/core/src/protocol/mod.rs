//! Verifier framework over bit-string inputs.
//!
//! A [`Decomposition`] maps a specification string `y` to `k` blocks. Block
//! `i` is a list of input coordinates (so `x^{(i)}_t = x[coords[t]]`, one
//! read per block coordinate) together with a sub-property that `x^{(i)}`
//! should satisfy. A [`SubVerifier`] tests a block against its sub-property.
//!
//! Every sub-verifier reports its exact rejection probability given the
//! block contents and its sub-proof, and can replay one execution with its
//! randomness conditioned on the outcome. The verifiers in [`verify`] use
//! the first to drive the amplification model and the second to produce
//! the classical reads that end up in the trace.

use std::any::Any;
use std::sync::Arc;

use crate::rng::TrialRng;

pub mod pomap;
pub mod precision;
pub mod testers;
pub mod verify;

pub use pomap::{pomap_speedup, PoMap, PoMapVerifier};
pub use precision::{precision_sampling_levels, Level};
pub use testers::TrivialTester;
pub use verify::{decompose_verify, decompose_verify_po, exact_decide, PreparedRun};

/// Membership and distance descriptor for one block.
pub trait SubProperty: Send + Sync {
    fn contains(&self, block: &[u8]) -> bool;

    /// Exact relative Hamming distance from `block` to the sub-property
    /// (1.0 when the sub-property is empty at this length).
    fn distance(&self, block: &[u8]) -> f64;

    fn as_any(&self) -> &dyn Any;
}

#[derive(Clone)]
pub struct Block {
    pub coords: Vec<usize>,
    pub property: Arc<dyn SubProperty>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Uncounted extraction of `x^{(i)}`.
    pub fn extract(&self, x: &[u8]) -> Vec<u8> {
        self.coords.iter().map(|&c| x[c]).collect()
    }
}

/// A property of `{0,1}^n` reducible to block sub-properties via a
/// specification string.
pub trait Decomposition: Send + Sync {
    fn name(&self) -> &str;

    /// Input length.
    fn n(&self) -> usize;

    /// Nominal block count.
    fn k(&self) -> usize;

    /// Specification length `s` in bits.
    fn spec_bits(&self) -> usize;

    /// Input reads per block coordinate.
    fn read_width(&self) -> usize {
        1
    }

    /// Declared constant in `E_{i←D}[ε_i] ≥ c_dec·ε`.
    fn c_dec(&self) -> f64;

    /// Blocks for `y`, or `None` when `y ∉ S` (including wrong length).
    fn blocks(&self, y: &[u8]) -> Option<Vec<Block>>;

    /// A specification under which every block of a member passes.
    fn honest_spec(&self, x: &[u8]) -> Option<Vec<u8>>;

    /// Direct membership decision.
    fn contains(&self, x: &[u8]) -> bool;

    /// Exact relative distance to the property.
    fn distance(&self, x: &[u8]) -> f64;

    /// All specifications in `S`, when small enough to list.
    fn all_specs(&self) -> Vec<Vec<u8>> {
        let s = self.spec_bits();
        assert!(s <= 24, "spec space too large to enumerate");
        (0u64..1 << s)
            .map(|v| bits_of(v, s))
            .filter(|y| self.blocks(y).is_some())
            .collect()
    }
}

/// Sampling distribution `D`: block `i` with probability `m_i / Σ m_j`.
pub fn sampling_weights(blocks: &[Block]) -> Vec<f64> {
    let total: usize = blocks.iter().map(Block::len).sum();
    blocks
        .iter()
        .map(|b| b.len() as f64 / total.max(1) as f64)
        .collect()
}

/// `E_{i←D}[ε_i]` by per-block exact distances.
pub fn expected_block_distance(blocks: &[Block], x: &[u8]) -> f64 {
    sampling_weights(blocks)
        .iter()
        .zip(blocks)
        .map(|(w, b)| w * b.property.distance(&b.extract(x)))
        .sum()
}

/// A one-sided tester for a block, optionally proximity-oblivious.
pub trait SubVerifier: Send + Sync {
    fn name(&self) -> &str;

    /// `(α, β)` in the budget `q(m, δ) = m^α / δ^β`.
    fn exponents(&self) -> (f64, f64);

    /// Sub-proof length `p` for this decomposition's blocks.
    fn proof_bits(&self, blocks: &[Block]) -> usize;

    /// Block reads made by one run at proximity `delta` on a block of
    /// length `m`.
    fn queries(&self, m: usize, delta: f64) -> u64;

    /// Detection probability `ρ(δ, m)`; `Some` only for proximity-oblivious
    /// verifiers.
    fn detection(&self, _delta: f64, _m: usize) -> Option<f64> {
        None
    }

    fn rejection_probability(&self, block: &Block, bits: &[u8], proof: &[u8], delta: f64) -> f64;

    /// One execution with randomness conditioned on `reject`. `bits` is the
    /// simulator's uncounted view; reads that count go through `read`.
    #[allow(clippy::too_many_arguments)]
    fn measured_run(
        &self,
        block: &Block,
        bits: &[u8],
        proof: &[u8],
        delta: f64,
        reject: bool,
        rng: &mut TrialRng,
        read: &mut dyn FnMut(usize) -> u8,
    );
}

/// Little-endian bits of `v`.
pub fn bits_of(v: u64, width: usize) -> Vec<u8> {
    (0..width).map(|i| ((v >> i) & 1) as u8).collect()
}

/// Inverse of [`bits_of`].
pub fn value_of(bits: &[u8]) -> u64 {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | ((b as u64 & 1) << i))
}
