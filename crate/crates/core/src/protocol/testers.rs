use super::{Block, SubVerifier};
use crate::rng::TrialRng;

/// Reads the whole block and checks membership.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialTester;

impl SubVerifier for TrivialTester {
    fn name(&self) -> &str {
        "trivial"
    }

    fn exponents(&self) -> (f64, f64) {
        (1.0, 0.0)
    }

    fn proof_bits(&self, _blocks: &[Block]) -> usize {
        0
    }

    fn queries(&self, m: usize, _delta: f64) -> u64 {
        m as u64
    }

    fn rejection_probability(&self, block: &Block, bits: &[u8], _proof: &[u8], _delta: f64) -> f64 {
        if block.property.contains(bits) {
            0.0
        } else {
            1.0
        }
    }

    fn measured_run(
        &self,
        block: &Block,
        _bits: &[u8],
        _proof: &[u8],
        _delta: f64,
        _reject: bool,
        _rng: &mut TrialRng,
        read: &mut dyn FnMut(usize) -> u8,
    ) {
        for t in 0..block.len() {
            read(t);
        }
    }
}
