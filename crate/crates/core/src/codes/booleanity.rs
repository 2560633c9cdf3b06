//! MAP for non-Booleanity of the encoded message: the proof names a
//! coordinate `i` with `z_i = 2`, the verifier tests linearity and then
//! decodes `z_i`.

use super::f3::F3;
use super::hadamard::{blr_repetitions, local_decode, local_test_linear};
use crate::config::Constants;
use crate::oracle::{ceil_log2, CountingOracle, FieldString};
use crate::protocol::{bits_of, value_of};
use crate::rng::rng_from_seed;
use crate::trace::{Verdict, VerdictTrace};

/// `⌈log₂ k⌉` bits.
pub fn booleanity_proof_bits(k: usize) -> usize {
    ceil_log2(k as u64) as usize
}

pub fn encode_index(i: usize, k: usize) -> Vec<u8> {
    bits_of(i as u64, booleanity_proof_bits(k))
}

/// Honest proof: the first coordinate equal to 2.
pub fn honest_index(z: &[F3]) -> Option<usize> {
    z.iter().position(|&s| s == F3::TWO)
}

pub fn booleanity_map_verify(
    oracle: &CountingOracle<FieldString>,
    k: usize,
    proof: &[u8],
    eps: f64,
    constants: &Constants,
    seed: u64,
) -> VerdictTrace {
    let bits = booleanity_proof_bits(k);
    let q0 = oracle.queries();
    let index = value_of(proof) as usize;
    if proof.len() != bits || proof.iter().any(|&b| b > 1) || index >= k {
        return VerdictTrace::reject_without_queries(proof.len().min(bits) as u64, seed);
    }
    let mut rng = rng_from_seed(seed);
    let reps = blr_repetitions(constants.c_blr, eps);
    let accept = local_test_linear(oracle, k, reps, &mut rng)
        && local_decode(oracle, k, index, constants.decode_reps as u64, &mut rng) == Some(F3::TWO);
    VerdictTrace {
        verdict: Verdict::from_reject(!accept),
        classical_queries: oracle.queries() - q0,
        modeled_quantum_queries: 0,
        proof_bits_consumed: bits as u64,
        seed,
    }
}
