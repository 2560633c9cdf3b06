//! Amplifying a proximity-oblivious MAP with a fixed proof.

use crate::amplify::{run_amplified, AmplifiedRoutine, OneSidedRoutine, Schedule};
use crate::config::Constants;
use crate::error::{Error, Result};
use crate::oracle::{BitString, CountingOracle};
use crate::rng::{rng_from_seed, TrialRng};
use crate::trace::VerdictTrace;

/// A one-sided MAP that is not given `ε` and detects `ε`-far inputs with
/// probability `ρ(ε, n)`.
pub trait PoMap: Send + Sync {
    fn name(&self) -> &str;

    fn n(&self) -> usize;

    fn proof_bits(&self) -> usize;

    /// Reads per run.
    fn queries(&self) -> u64;

    /// `ρ(ε, n)`.
    fn detection(&self, eps: f64) -> f64;

    fn honest_proof(&self, x: &[u8]) -> Option<Vec<u8>>;

    fn rejection_probability(&self, x: &[u8], proof: &[u8]) -> f64;

    fn measured_run(
        &self,
        x: &[u8],
        proof: &[u8],
        reject: bool,
        rng: &mut TrialRng,
        read: &mut dyn FnMut(usize) -> u8,
    );
}

/// The amplified verifier returned by [`pomap_speedup`].
pub struct PoMapVerifier<'a> {
    pub pomap: &'a dyn PoMap,
    pub eps: f64,
    pub gamma_floor: f64,
    pub repeats: u32,
}

/// Wraps `pomap` in amplitude amplification with floor `ρ(ε, n)`.
pub fn pomap_speedup<'a>(pomap: &'a dyn PoMap, eps: f64, constants: &Constants) -> Result<PoMapVerifier<'a>> {
    let rho = pomap.detection(eps);
    if !(rho > 0.0) {
        return Err(Error::Config(format!("detection probability must be positive, got {rho}")));
    }
    Schedule::for_gamma_floor(rho, constants.amp_repeats)?;
    Ok(PoMapVerifier {
        pomap,
        eps,
        gamma_floor: rho.min(1.0),
        repeats: constants.amp_repeats,
    })
}

struct Base<'r> {
    pomap: &'r dyn PoMap,
    x: &'r [u8],
    proof: &'r [u8],
    gamma: f64,
    oracle: &'r CountingOracle<BitString>,
}

impl OneSidedRoutine for Base<'_> {
    fn rejection_probability(&self) -> f64 {
        self.gamma
    }

    fn cost_per_invocation(&self) -> u64 {
        self.pomap.queries()
    }

    fn measured_execution(&self, rng: &mut TrialRng, reject: bool) {
        let oracle = self.oracle;
        let mut read = |i: usize| oracle.read(i);
        self.pomap
            .measured_run(self.x, self.proof, reject, rng, &mut read);
    }
}

impl PoMapVerifier<'_> {
    pub fn schedule(&self) -> Schedule {
        Schedule::for_gamma_floor(self.gamma_floor, self.repeats).unwrap()
    }

    /// Exact acceptance probability of the amplified verifier.
    pub fn acceptance_probability(&self, x: &[u8], proof: &[u8]) -> f64 {
        let gamma = self.pomap.rejection_probability(x, proof);
        1.0 - self.schedule().rejection_probability(gamma)
    }

    /// Worst-case modeled queries: `max_invocations × q`.
    pub fn max_modeled_queries(&self) -> u64 {
        self.schedule().max_invocations() * self.pomap.queries()
    }

    pub fn verify(&self, oracle: &CountingOracle<BitString>, proof: &[u8], seed: u64) -> VerdictTrace {
        let (q0, m0) = (oracle.queries(), oracle.modeled_queries());
        let x = &oracle.payload().0;
        let base = Base {
            pomap: self.pomap,
            x,
            proof,
            gamma: self.pomap.rejection_probability(x, proof).clamp(0.0, 1.0),
            oracle,
        };
        let amp = AmplifiedRoutine::new(&base, self.gamma_floor, self.repeats).unwrap();
        let mut rng = rng_from_seed(seed);
        let out = run_amplified(&amp, &mut rng);
        oracle.charge_modeled(out.modeled_queries);
        VerdictTrace {
            verdict: out.verdict,
            classical_queries: oracle.queries() - q0,
            modeled_quantum_queries: oracle.modeled_queries() - m0,
            proof_bits_consumed: proof.len() as u64,
            seed,
        }
    }
}
