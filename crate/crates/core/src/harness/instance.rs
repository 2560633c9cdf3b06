//! A verifier bound to one input, seen by the harness as a map from proof
//! bit strings to runs.

use std::sync::Arc;

use rand::Rng;

use crate::bipartite::BipartiteVerifier;
use crate::codes::booleanity::{booleanity_map_verify, booleanity_proof_bits, encode_index, honest_index};
use crate::codes::f3::F3;
use crate::config::Constants;
use crate::error::Result;
use crate::oracle::{BitString, CountingOracle, FieldString};
use crate::protocol::verify::{prepare_decompose, prepare_decompose_po, prepare_exact, PreparedRun};
use crate::protocol::{pomap_speedup, Decomposition, PoMap, SubVerifier};
use crate::rng::{derive_seed, TrialRng};
use crate::trace::VerdictTrace;

/// Runs for one fixed proof.
pub trait Prepared: Sync {
    /// Acceptance probability; exact unless the instance says otherwise.
    fn acceptance(&self) -> f64;
    fn run(&self, seed: u64) -> VerdictTrace;
}

impl Prepared for PreparedRun<'_> {
    fn acceptance(&self) -> f64 {
        self.acceptance_probability()
    }

    fn run(&self, seed: u64) -> VerdictTrace {
        PreparedRun::run(self, seed)
    }
}

pub trait Instance: Sync {
    fn name(&self) -> String;
    fn n(&self) -> usize;
    fn k(&self) -> usize;
    fn eps(&self) -> f64;
    fn proof_bits(&self) -> usize;
    fn honest_proof(&self) -> Option<Vec<u8>>;
    fn prepare<'s>(&'s self, proof: &[u8]) -> Result<Box<dyn Prepared + 's>>;

    /// Starting points for the hill-climbing adversary.
    fn adversary_starts(&self) -> Vec<Vec<u8>> {
        self.honest_proof().into_iter().collect()
    }

    /// False when [`Prepared::acceptance`] is a Monte Carlo estimate.
    fn exact_acceptance(&self) -> bool {
        true
    }

    fn acceptance(&self, proof: &[u8]) -> Result<f64> {
        Ok(self.prepare(proof)?.acceptance())
    }

    /// Size of the proof space searched by the exhaustive adversary.
    fn proof_count(&self) -> u128 {
        1u128.checked_shl(self.proof_bits() as u32).unwrap_or(u128::MAX)
    }

    /// Proof number `i < proof_count()`.
    fn proof_at(&self, i: u128) -> Vec<u8> {
        (0..self.proof_bits()).map(|t| (i >> t & 1) as u8).collect()
    }

    fn random_proof(&self, rng: &mut TrialRng) -> Vec<u8> {
        (0..self.proof_bits()).map(|_| rng.gen_range(0..2)).collect()
    }

    /// One single-element change.
    fn mutate(&self, proof: &[u8], rng: &mut TrialRng) -> Vec<u8> {
        let mut p = proof.to_vec();
        if !p.is_empty() {
            let i = rng.gen_range(0..p.len());
            p[i] ^= 1;
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecomposeMode {
    /// Precision sampling with a sub-verifier.
    Plain,
    /// Precision sampling with a proximity-oblivious sub-verifier; the
    /// proof carries sub-proofs after the specification.
    Oblivious,
    /// Uniform block, read in full.
    Exact,
}

pub struct DecomposeInstance {
    pub dec: Box<dyn Decomposition>,
    pub sub: Box<dyn SubVerifier>,
    pub mode: DecomposeMode,
    pub payload: Arc<BitString>,
    pub eps: f64,
    pub constants: Constants,
    /// Honest sub-proof appended to the honest specification in
    /// [`DecomposeMode::Oblivious`].
    pub honest_subproof: Option<Vec<u8>>,
    /// Number of bits flipped together by [`Instance::mutate`].
    pub mutation_width: usize,
    /// Extra adversary starting points, e.g. honest proofs of nearby members.
    pub decoys: Vec<Vec<u8>>,
}

impl Instance for DecomposeInstance {
    fn name(&self) -> String {
        format!("{}/{}", self.dec.name(), self.sub.name())
    }

    fn n(&self) -> usize {
        self.dec.n()
    }

    fn k(&self) -> usize {
        self.dec.k()
    }

    fn eps(&self) -> f64 {
        self.eps
    }

    fn proof_bits(&self) -> usize {
        let y = self.dec.spec_bits();
        match (&self.mode, &self.honest_subproof) {
            (DecomposeMode::Oblivious, Some(p)) => y + p.len(),
            _ => y,
        }
    }

    fn honest_proof(&self) -> Option<Vec<u8>> {
        let mut y = self.dec.honest_spec(&self.payload.0)?;
        if self.mode == DecomposeMode::Oblivious {
            y.extend(self.honest_subproof.as_ref()?);
        }
        Some(y)
    }

    fn prepare<'s>(&'s self, proof: &[u8]) -> Result<Box<dyn Prepared + 's>> {
        let payload = Arc::clone(&self.payload);
        let c = &self.constants;
        let run = match self.mode {
            DecomposeMode::Plain => prepare_decompose(self.dec.as_ref(), self.sub.as_ref(), payload, self.eps, proof, c)?,
            DecomposeMode::Oblivious => {
                prepare_decompose_po(self.dec.as_ref(), self.sub.as_ref(), payload, self.eps, proof, c)?
            }
            DecomposeMode::Exact => prepare_exact(self.dec.as_ref(), payload, proof, c)?,
        };
        Ok(Box::new(run))
    }

    fn adversary_starts(&self) -> Vec<Vec<u8>> {
        self.honest_proof().into_iter().chain(self.decoys.iter().cloned()).collect()
    }

    fn mutate(&self, proof: &[u8], rng: &mut TrialRng) -> Vec<u8> {
        let mut p = proof.to_vec();
        if p.is_empty() {
            return p;
        }
        let width = self.mutation_width.clamp(1, p.len());
        let mut picked = Vec::with_capacity(width);
        while picked.len() < width {
            let i = rng.gen_range(0..p.len());
            if !picked.contains(&i) {
                picked.push(i);
            }
        }
        for i in picked {
            p[i] ^= 1;
        }
        p
    }
}

/// A proximity-oblivious MAP amplified on its own.
pub struct PoMapInstance {
    pub map: Box<dyn PoMap>,
    pub payload: Arc<BitString>,
    pub eps: f64,
    pub k: usize,
    pub constants: Constants,
    pub decoys: Vec<Vec<u8>>,
}

struct PoMapRun<'s> {
    inst: &'s PoMapInstance,
    proof: Vec<u8>,
}

impl Prepared for PoMapRun<'_> {
    fn acceptance(&self) -> f64 {
        let v = pomap_speedup(self.inst.map.as_ref(), self.inst.eps, &self.inst.constants).unwrap();
        v.acceptance_probability(&self.inst.payload.0, &self.proof)
    }

    fn run(&self, seed: u64) -> VerdictTrace {
        let v = pomap_speedup(self.inst.map.as_ref(), self.inst.eps, &self.inst.constants).unwrap();
        v.verify(&CountingOracle::from_shared(Arc::clone(&self.inst.payload)), &self.proof, seed)
    }
}

impl Instance for PoMapInstance {
    fn name(&self) -> String {
        self.map.name().to_string()
    }

    fn n(&self) -> usize {
        self.map.n()
    }

    fn k(&self) -> usize {
        self.k
    }

    fn eps(&self) -> f64 {
        self.eps
    }

    fn proof_bits(&self) -> usize {
        self.map.proof_bits()
    }

    fn honest_proof(&self) -> Option<Vec<u8>> {
        self.map.honest_proof(&self.payload.0)
    }

    fn adversary_starts(&self) -> Vec<Vec<u8>> {
        self.honest_proof().into_iter().chain(self.decoys.iter().cloned()).collect()
    }

    fn prepare<'s>(&'s self, proof: &[u8]) -> Result<Box<dyn Prepared + 's>> {
        pomap_speedup(self.map.as_ref(), self.eps, &self.constants)?;
        Ok(Box::new(PoMapRun {
            inst: self,
            proof: proof.to_vec(),
        }))
    }
}

/// Bipartiteness; the proof is `k` vertex names of `⌈log₂ n⌉` bits each.
pub struct BipartiteInstance {
    pub verifier: BipartiteVerifier,
}

struct BipartiteRun<'s> {
    verifier: &'s BipartiteVerifier,
    names: Vec<usize>,
}

impl Prepared for BipartiteRun<'_> {
    fn acceptance(&self) -> f64 {
        self.verifier.acceptance_probability(&self.names)
    }

    fn run(&self, seed: u64) -> VerdictTrace {
        self.verifier.verify(&self.verifier.graph.oracle(), &self.names, seed)
    }
}

/// The `i`-th `k`-subset of `[n]` in colexicographic order.
fn unrank_subset(mut i: u128, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut hi = n;
    for r in (1..=k).rev() {
        // largest c < hi with C(c, r) ≤ i
        let mut c = r - 1;
        while c + 1 < hi && binomial(c + 1, r) <= i {
            c += 1;
        }
        i -= binomial(c, r);
        out.push(c);
        hi = c;
    }
    out.reverse();
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

impl Instance for BipartiteInstance {
    fn name(&self) -> String {
        "bipartite".into()
    }

    fn n(&self) -> usize {
        self.verifier.graph.n
    }

    fn k(&self) -> usize {
        self.verifier.k
    }

    fn eps(&self) -> f64 {
        self.verifier.eps
    }

    fn proof_bits(&self) -> usize {
        self.verifier.proof_bits()
    }

    fn honest_proof(&self) -> Option<Vec<u8>> {
        self.verifier.honest_proof().map(|s| self.verifier.encode_proof(&s))
    }

    fn prepare<'s>(&'s self, proof: &[u8]) -> Result<Box<dyn Prepared + 's>> {
        // a malformed encoding is passed on as an invalid name list
        let names = self.verifier.decode_proof(proof).unwrap_or_default();
        Ok(Box::new(BipartiteRun {
            verifier: &self.verifier,
            names,
        }))
    }

    /// Only sets of `k` distinct names.
    fn proof_count(&self) -> u128 {
        binomial(self.n(), self.k())
    }

    fn proof_at(&self, i: u128) -> Vec<u8> {
        self.verifier.encode_proof(&unrank_subset(i, self.n(), self.k()))
    }

    fn random_proof(&self, rng: &mut TrialRng) -> Vec<u8> {
        let mut names: Vec<usize> = (0..self.n()).collect();
        rand::seq::SliceRandom::partial_shuffle(names.as_mut_slice(), rng, self.k());
        self.verifier.encode_proof(&names[..self.k()])
    }

    /// Replaces one name by a vertex outside the set.
    fn mutate(&self, proof: &[u8], rng: &mut TrialRng) -> Vec<u8> {
        let Some(mut names) = self.verifier.decode_proof(proof) else {
            return self.random_proof(rng);
        };
        if names.len() == self.n() {
            return proof.to_vec();
        }
        let slot = rng.gen_range(0..names.len());
        loop {
            let w = rng.gen_range(0..self.n());
            if !names.contains(&w) {
                names[slot] = w;
                break;
            }
        }
        self.verifier.encode_proof(&names)
    }
}

/// Booleanity of a Hadamard-encoded message over F_3. Acceptance is
/// estimated from [`BooleanityInstance::estimate_runs`] seeded runs.
pub struct BooleanityInstance {
    pub word: Arc<FieldString>,
    pub k: usize,
    pub eps: f64,
    pub constants: Constants,
    /// The encoded message, when the word is a codeword.
    pub message: Option<Vec<F3>>,
    pub estimate_runs: u64,
}

struct BooleanityRun<'s> {
    inst: &'s BooleanityInstance,
    proof: Vec<u8>,
}

impl Prepared for BooleanityRun<'_> {
    fn acceptance(&self) -> f64 {
        let runs = self.inst.estimate_runs.max(1);
        let accepted = (0..runs)
            .filter(|&i| self.run(derive_seed(0xB001, 0, i)).verdict.is_accept())
            .count();
        accepted as f64 / runs as f64
    }

    fn run(&self, seed: u64) -> VerdictTrace {
        let o = CountingOracle::from_shared(Arc::clone(&self.inst.word));
        booleanity_map_verify(&o, self.inst.k, &self.proof, self.inst.eps, &self.inst.constants, seed)
    }
}

impl Instance for BooleanityInstance {
    fn name(&self) -> String {
        "booleanity".into()
    }

    fn n(&self) -> usize {
        self.word.0.len()
    }

    fn k(&self) -> usize {
        self.k
    }

    fn eps(&self) -> f64 {
        self.eps
    }

    fn proof_bits(&self) -> usize {
        booleanity_proof_bits(self.k)
    }

    fn honest_proof(&self) -> Option<Vec<u8>> {
        honest_index(self.message.as_ref()?).map(|i| encode_index(i, self.k))
    }

    fn prepare<'s>(&'s self, proof: &[u8]) -> Result<Box<dyn Prepared + 's>> {
        Ok(Box::new(BooleanityRun {
            inst: self,
            proof: proof.to_vec(),
        }))
    }

    fn exact_acceptance(&self) -> bool {
        false
    }

    /// Only in-range indices.
    fn proof_count(&self) -> u128 {
        self.k as u128
    }

    fn proof_at(&self, i: u128) -> Vec<u8> {
        encode_index(i as usize, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_unrank_in_colex_order() {
        let all: Vec<Vec<usize>> = (0..binomial(6, 3)).map(|i| unrank_subset(i, 6, 3)).collect();
        assert_eq!(all.len(), 20);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[19], vec![3, 4, 5]);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 20);
        assert_eq!(binomial(16, 4), 1820);
    }
}
