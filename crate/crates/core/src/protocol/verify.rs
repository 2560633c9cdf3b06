//! The generic decomposition verifiers.
//!
//! Each verifier is first *prepared* for a fixed input and proof: the proof
//! is parsed, blocks are formed, and the exact rejection probability of each
//! amplified stage is computed from uncounted views of the blocks. A
//! prepared run can then be executed for any seed, cheaply, and its exact
//! acceptance probability is available for adversarial proof search.

use std::sync::Arc;

use rand::Rng;

use super::precision::{log_factor, precision_sampling_levels};
use super::{sampling_weights, Block, Decomposition, SubVerifier, TrivialTester};
use crate::amplify::{run_amplified, AmplifiedRoutine, OneSidedRoutine, Schedule};
use crate::config::Constants;
use crate::error::Result;
use crate::oracle::{BitString, CountingOracle};
use crate::rng::{rng_from_seed, TrialRng};
use crate::trace::{Verdict, VerdictTrace};

static TRIVIAL: TrivialTester = TrivialTester;

struct Choice<'a> {
    tester: &'a dyn SubVerifier,
    reject: f64,
}

struct Stage<'a> {
    delta: f64,
    weights: Vec<f64>,
    choices: Vec<Choice<'a>>,
    gamma: f64,
    gamma_floor: f64,
    cost: u64,
}

/// A verifier bound to one input and one proof.
pub struct PreparedRun<'a> {
    payload: Arc<BitString>,
    blocks: Vec<Block>,
    bits: Vec<Vec<u8>>,
    subproofs: Vec<Vec<u8>>,
    stages: Vec<Stage<'a>>,
    repeats: u32,
    proof_bits: u64,
}

impl<'a> PreparedRun<'a> {
    fn rejecting(payload: Arc<BitString>, proof_bits: u64) -> Self {
        Self {
            payload,
            blocks: Vec::new(),
            bits: Vec::new(),
            subproofs: Vec::new(),
            stages: Vec::new(),
            repeats: 1,
            proof_bits,
        }
    }

    /// True when the proof is rejected before any oracle access.
    pub fn rejects_outright(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn proof_bits(&self) -> u64 {
        self.proof_bits
    }

    /// Base rejection probability `γ'` of each stage.
    pub fn stage_gammas(&self) -> Vec<f64> {
        self.stages.iter().map(|s| s.gamma).collect()
    }

    pub fn stage_floors(&self) -> Vec<f64> {
        self.stages.iter().map(|s| s.gamma_floor).collect()
    }

    /// Exact probability that [`PreparedRun::run`] accepts.
    pub fn acceptance_probability(&self) -> f64 {
        if self.rejects_outright() {
            return 0.0;
        }
        self.stages
            .iter()
            .map(|s| {
                let sched = Schedule::for_gamma_floor(s.gamma_floor, self.repeats)
                    .expect("floor validated at preparation");
                1.0 - sched.rejection_probability(s.gamma)
            })
            .product()
    }

    /// Worst-case classical reads over all seeds.
    pub fn max_classical_queries(&self) -> u64 {
        self.stages
            .iter()
            .map(|s| {
                let sched = Schedule::for_gamma_floor(s.gamma_floor, self.repeats).unwrap();
                sched.trials() as u64 * s.cost
            })
            .sum()
    }

    /// Worst-case modeled queries over all seeds.
    pub fn max_modeled_queries(&self) -> u64 {
        self.stages
            .iter()
            .map(|s| {
                let sched = Schedule::for_gamma_floor(s.gamma_floor, self.repeats).unwrap();
                sched.max_invocations() * s.cost
            })
            .sum()
    }

    pub fn run(&self, seed: u64) -> VerdictTrace {
        self.run_on(&CountingOracle::from_shared(Arc::clone(&self.payload)), seed)
    }

    /// Runs against `oracle`, whose counters accumulate. The trace reports
    /// the increments made by this run.
    pub fn run_on(&self, oracle: &CountingOracle<BitString>, seed: u64) -> VerdictTrace {
        let (q0, m0) = (oracle.queries(), oracle.modeled_queries());
        let mut rng = rng_from_seed(seed);
        let mut verdict = if self.rejects_outright() {
            Verdict::Reject
        } else {
            Verdict::Accept
        };
        for stage in &self.stages {
            let routine = StageRoutine {
                run: self,
                stage,
                oracle,
            };
            let amp = AmplifiedRoutine::new(&routine, stage.gamma_floor, self.repeats)
                .expect("floor validated at preparation");
            let out = run_amplified(&amp, &mut rng);
            oracle.charge_modeled(out.modeled_queries);
            if out.verdict == Verdict::Reject {
                verdict = Verdict::Reject;
                break;
            }
        }
        VerdictTrace {
            verdict,
            classical_queries: oracle.queries() - q0,
            modeled_quantum_queries: oracle.modeled_queries() - m0,
            proof_bits_consumed: self.proof_bits,
            seed,
        }
    }
}

struct StageRoutine<'r, 'a> {
    run: &'r PreparedRun<'a>,
    stage: &'r Stage<'a>,
    oracle: &'r CountingOracle<BitString>,
}

impl OneSidedRoutine for StageRoutine<'_, '_> {
    fn rejection_probability(&self) -> f64 {
        self.stage.gamma
    }

    fn cost_per_invocation(&self) -> u64 {
        self.stage.cost
    }

    fn measured_execution(&self, rng: &mut TrialRng, reject: bool) {
        let st = self.stage;
        let mass: Vec<f64> = st
            .weights
            .iter()
            .zip(&st.choices)
            .map(|(w, c)| if reject { w * c.reject } else { w * (1.0 - c.reject) })
            .collect();
        let i = sample_index(if mass.iter().sum::<f64>() > 0.0 { &mass } else { &st.weights }, rng);
        let block = &self.run.blocks[i];
        let oracle = self.oracle;
        let mut read = |t: usize| oracle.read(block.coords[t]);
        st.choices[i].tester.measured_run(
            block,
            &self.run.bits[i],
            &self.run.subproofs[i],
            st.delta,
            reject,
            rng,
            &mut read,
        );
    }
}

pub(crate) fn sample_index(weights: &[f64], rng: &mut TrialRng) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.gen::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        if u < w {
            return i;
        }
        u -= w;
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

/// Splits `proof` into `(y, blocks, sub-proofs)`, or `None` when malformed.
fn parse_proof(
    dec: &dyn Decomposition,
    sub: &dyn SubVerifier,
    proof: &[u8],
) -> Option<(Vec<Block>, Vec<Vec<u8>>)> {
    let s = dec.spec_bits();
    if proof.len() < s {
        return None;
    }
    let blocks = dec.blocks(&proof[..s])?;
    let p = sub.proof_bits(&blocks);
    if proof.len() != s + blocks.len() * p {
        return None;
    }
    let subproofs = (0..blocks.len())
        .map(|i| proof[s + i * p..s + (i + 1) * p].to_vec())
        .collect();
    Some((blocks, subproofs))
}

fn gather(payload: &BitString, blocks: &[Block]) -> Vec<Vec<u8>> {
    blocks.iter().map(|b| b.extract(&payload.0)).collect()
}

/// Tester used on block `m` at proximity `delta`: the given one, or the
/// trivial tester when the given one would read at least the whole block.
fn effective<'a>(sub: &'a dyn SubVerifier, m: usize, delta: f64) -> &'a dyn SubVerifier {
    if delta * (m as f64) < 1.0 || sub.queries(m, delta) >= m as u64 {
        &TRIVIAL
    } else {
        sub
    }
}

fn build_stage<'a>(
    blocks: &[Block],
    bits: &[Vec<u8>],
    subproofs: &[Vec<u8>],
    weights: Vec<f64>,
    testers: Vec<&'a dyn SubVerifier>,
    delta: f64,
    gamma_floor: f64,
    read_width: u64,
) -> Stage<'a> {
    let choices: Vec<Choice<'a>> = testers
        .into_iter()
        .enumerate()
        .map(|(i, t)| Choice {
            tester: t,
            reject: t
                .rejection_probability(&blocks[i], &bits[i], &subproofs[i], delta)
                .clamp(0.0, 1.0),
        })
        .collect();
    let gamma = weights.iter().zip(&choices).map(|(w, c)| w * c.reject).sum();
    let cost = choices
        .iter()
        .zip(blocks)
        .map(|(c, b)| c.tester.queries(b.len(), delta))
        .max()
        .unwrap_or(0)
        * read_width;
    Stage {
        delta,
        weights,
        choices,
        gamma,
        gamma_floor,
        cost,
    }
}

/// Prepares the precision-sampling verifier.
pub fn prepare_decompose<'a>(
    dec: &dyn Decomposition,
    sub: &'a dyn SubVerifier,
    payload: Arc<BitString>,
    eps: f64,
    proof: &[u8],
    constants: &Constants,
) -> Result<PreparedRun<'a>> {
    let levels = precision_sampling_levels(eps, constants.c_ps)?;
    let Some((blocks, subproofs)) = parse_proof(dec, sub, proof) else {
        return Ok(PreparedRun::rejecting(payload, proof.len().min(dec.spec_bits()) as u64));
    };
    let bits = gather(&payload, &blocks);
    let weights = sampling_weights(&blocks);
    let stages = levels
        .iter()
        .map(|l| {
            let testers = blocks
                .iter()
                .map(|b| effective(sub, b.len(), l.sub_proximity))
                .collect();
            let floor = 1.0 / (l.rounds as f64).powi(2);
            build_stage(
                &blocks,
                &bits,
                &subproofs,
                weights.clone(),
                testers,
                l.sub_proximity,
                floor,
                dec.read_width() as u64,
            )
        })
        .collect();
    Ok(PreparedRun {
        payload,
        blocks,
        bits,
        subproofs,
        stages,
        repeats: constants.amp_repeats,
        proof_bits: proof.len() as u64,
    })
}

/// Prepares the variant for proximity-oblivious sub-verifiers: each level
/// amplifies "sample a block, run the sub-verifier once" with floor
/// `(2^j·ε / (c_ps²·L))·ρ(2^{-j}, m)`, `L = max(1, log₂(1/ε))`.
pub fn prepare_decompose_po<'a>(
    dec: &dyn Decomposition,
    sub: &'a dyn SubVerifier,
    payload: Arc<BitString>,
    eps: f64,
    proof: &[u8],
    constants: &Constants,
) -> Result<PreparedRun<'a>> {
    let levels = precision_sampling_levels(eps, constants.c_ps)?;
    if sub.detection(eps, dec.n()).is_none() {
        return Err(crate::Error::Config(format!(
            "sub-verifier {} is not proximity-oblivious",
            sub.name()
        )));
    }
    let Some((blocks, subproofs)) = parse_proof(dec, sub, proof) else {
        return Ok(PreparedRun::rejecting(payload, proof.len().min(dec.spec_bits()) as u64));
    };
    let bits = gather(&payload, &blocks);
    let weights = sampling_weights(&blocks);
    let lf = log_factor(eps);
    let mut stages = Vec::with_capacity(levels.len());
    for l in &levels {
        let rho = blocks
            .iter()
            .map(|b| sub.detection(l.sub_proximity, b.len()).unwrap_or(0.0))
            .fold(f64::INFINITY, f64::min);
        if !(rho > 0.0) {
            return Err(crate::Error::Config("detection probability must be positive".into()));
        }
        let floor = (2f64.powi(l.j as i32) * eps / (constants.c_ps.powi(2) * lf) * rho).min(1.0);
        stages.push(build_stage(
            &blocks,
            &bits,
            &subproofs,
            weights.clone(),
            vec![sub; blocks.len()],
            l.sub_proximity,
            floor,
            dec.read_width() as u64,
        ));
    }
    Ok(PreparedRun {
        payload,
        blocks,
        bits,
        subproofs,
        stages,
        repeats: constants.amp_repeats,
        proof_bits: proof.len() as u64,
    })
}

/// Prepares the exact decider: sample a block uniformly, read it fully,
/// check membership; amplified with floor `1/k`. The proof is `y` alone.
pub fn prepare_exact<'a>(
    dec: &dyn Decomposition,
    payload: Arc<BitString>,
    proof: &[u8],
    constants: &Constants,
) -> Result<PreparedRun<'a>> {
    let Some((blocks, subproofs)) = parse_proof(dec, &TRIVIAL, proof) else {
        return Ok(PreparedRun::rejecting(payload, proof.len().min(dec.spec_bits()) as u64));
    };
    let bits = gather(&payload, &blocks);
    let k = blocks.len();
    let stage = build_stage(
        &blocks,
        &bits,
        &subproofs,
        vec![1.0 / k as f64; k],
        vec![&TRIVIAL as &dyn SubVerifier; k],
        1.0,
        1.0 / k as f64,
        dec.read_width() as u64,
    );
    Ok(PreparedRun {
        payload,
        blocks,
        bits,
        subproofs,
        stages: vec![stage],
        repeats: constants.amp_repeats,
        proof_bits: proof.len() as u64,
    })
}

pub fn decompose_verify(
    dec: &dyn Decomposition,
    sub: &dyn SubVerifier,
    oracle: &CountingOracle<BitString>,
    eps: f64,
    proof: &[u8],
    constants: &Constants,
    seed: u64,
) -> Result<VerdictTrace> {
    let prepared = prepare_decompose(dec, sub, oracle.shared_payload(), eps, proof, constants)?;
    Ok(prepared.run_on(oracle, seed))
}

pub fn decompose_verify_po(
    dec: &dyn Decomposition,
    sub: &dyn SubVerifier,
    oracle: &CountingOracle<BitString>,
    eps: f64,
    proof: &[u8],
    constants: &Constants,
    seed: u64,
) -> Result<VerdictTrace> {
    let prepared = prepare_decompose_po(dec, sub, oracle.shared_payload(), eps, proof, constants)?;
    Ok(prepared.run_on(oracle, seed))
}

pub fn exact_decide(
    dec: &dyn Decomposition,
    oracle: &CountingOracle<BitString>,
    proof: &[u8],
    constants: &Constants,
    seed: u64,
) -> Result<VerdictTrace> {
    let prepared = prepare_exact(dec, oracle.shared_payload(), proof, constants)?;
    Ok(prepared.run_on(oracle, seed))
}
