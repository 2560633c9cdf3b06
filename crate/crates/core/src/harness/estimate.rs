//! Completeness and soundness estimation, with adversarial proof search.

use rayon::prelude::*;

use super::instance::Instance;
use super::report::ReportRow;
use super::stats::wilson_interval;
use crate::config::Constants;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed, stream_id};

/// Largest proof space the exhaustive adversary enumerates.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdversaryMode {
    Exhaustive,
    Hillclimb { restarts: usize, budget: usize },
    /// Exhaustive when the proof space allows it, else hill-climbing.
    Auto { restarts: usize, budget: usize },
    HonestOnly,
}

impl AdversaryMode {
    pub fn hillclimb_default() -> Self {
        AdversaryMode::Hillclimb {
            restarts: 32,
            budget: 10_000,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            AdversaryMode::Exhaustive => "exhaustive",
            AdversaryMode::Hillclimb { .. } => "hillclimb",
            AdversaryMode::Auto { .. } => "auto",
            AdversaryMode::HonestOnly => "honest-only",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofPolicy {
    Honest,
    Fixed(Vec<u8>),
    Adversarial(AdversaryMode),
}

impl ProofPolicy {
    pub fn label(&self) -> String {
        match self {
            ProofPolicy::Honest => "honest".into(),
            ProofPolicy::Fixed(_) => "fixed".into(),
            ProofPolicy::Adversarial(m) => format!("adversarial-{}", m.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryResult {
    pub proof: Vec<u8>,
    pub acceptance: f64,
    pub evaluations: u64,
    /// True when the whole proof space was searched; otherwise
    /// `acceptance` is only a lower bound on the worst case.
    pub exhaustive: bool,
}

/// Picks the proof that maximises acceptance. Ties go to the earliest
/// candidate, so the result does not depend on scheduling.
pub fn search_adversary(inst: &dyn Instance, mode: AdversaryMode, seed: u64) -> Result<AdversaryResult> {
    match mode {
        AdversaryMode::HonestOnly => {
            let proof = inst
                .honest_proof()
                .ok_or_else(|| Error::Config("input has no honest proof".into()))?;
            let acceptance = inst.acceptance(&proof)?;
            Ok(AdversaryResult {
                proof,
                acceptance,
                evaluations: 1,
                exhaustive: false,
            })
        }
        AdversaryMode::Exhaustive => {
            let count = inst.proof_count();
            if count > EXHAUSTIVE_LIMIT {
                return Err(Error::ProofSpaceTooLarge { proofs: count });
            }
            let scored = (0..count as u64)
                .into_par_iter()
                .map(|i| inst.acceptance(&inst.proof_at(i as u128)).map(|a| (a, i)))
                .collect::<Result<Vec<_>>>()?;
            let (acceptance, best) = scored
                .into_iter()
                .fold((f64::NEG_INFINITY, 0), |acc, (a, i)| if a > acc.0 { (a, i) } else { acc });
            Ok(AdversaryResult {
                proof: inst.proof_at(best as u128),
                acceptance,
                evaluations: count as u64,
                exhaustive: true,
            })
        }
        AdversaryMode::Hillclimb { restarts, budget } => hillclimb(inst, restarts.max(1), budget.max(1), seed),
        AdversaryMode::Auto { restarts, budget } => {
            if inst.proof_count() <= EXHAUSTIVE_LIMIT {
                search_adversary(inst, AdversaryMode::Exhaustive, seed)
            } else {
                hillclimb(inst, restarts.max(1), budget.max(1), seed)
            }
        }
    }
}

fn hillclimb(inst: &dyn Instance, restarts: usize, budget: usize, seed: u64) -> Result<AdversaryResult> {
    let per = (budget / restarts).max(1);
    let stream = stream_id("hillclimb");
    let starts = inst.adversary_starts();
    let runs = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_from_seed(derive_seed(seed, stream, r as u64));
            let mut cur = match starts.get(r) {
                Some(p) => p.clone(),
                None => inst.random_proof(&mut rng),
            };
            let mut cur_acc = inst.acceptance(&cur)?;
            let (mut best, mut best_acc) = (cur.clone(), cur_acc);
            for _ in 1..per {
                let next = inst.mutate(&cur, &mut rng);
                let acc = inst.acceptance(&next)?;
                // sideways moves let the search cross plateaus
                if acc >= cur_acc {
                    cur = next;
                    cur_acc = acc;
                    if cur_acc > best_acc {
                        best = cur.clone();
                        best_acc = cur_acc;
                    }
                }
            }
            Ok((best_acc, r, best))
        })
        .collect::<Result<Vec<_>>>()?;
    let (acceptance, _, proof) = runs
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .unwrap();
    Ok(AdversaryResult {
        proof,
        acceptance,
        evaluations: (per * restarts) as u64,
        exhaustive: false,
    })
}

/// Totals over trials; combined by sums and maxima only.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    accepts: u64,
    classical_sum: u64,
    classical_max: u64,
    modeled_sum: u64,
    modeled_max: u64,
    proof_bits: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            accepts: self.accepts + o.accepts,
            classical_sum: self.classical_sum + o.classical_sum,
            classical_max: self.classical_max.max(o.classical_max),
            modeled_sum: self.modeled_sum + o.modeled_sum,
            modeled_max: self.modeled_max.max(o.modeled_max),
            proof_bits: self.proof_bits.max(o.proof_bits),
        }
    }
}

/// Runs `trials` seeded trials of `inst` under `policy`.
pub fn estimate(
    id: &str,
    inst: &dyn Instance,
    policy: &ProofPolicy,
    trials: u64,
    seed: u64,
    constants: &Constants,
) -> Result<ReportRow> {
    if trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let (proof, adversary) = match policy {
        ProofPolicy::Honest => (
            inst.honest_proof()
                .ok_or_else(|| Error::Config("input has no honest proof".into()))?,
            None,
        ),
        ProofPolicy::Fixed(p) => (p.clone(), None),
        ProofPolicy::Adversarial(mode) => {
            let r = search_adversary(inst, *mode, derive_seed(seed, stream_id("adversary"), 0))?;
            (r.proof.clone(), Some(r))
        }
    };
    let prepared = inst.prepare(&proof)?;
    let stream = stream_id("trial");
    let tally = (0..trials)
        .into_par_iter()
        .map(|i| {
            let t = prepared.run(derive_seed(seed, stream, i));
            Tally {
                accepts: t.verdict.is_accept() as u64,
                classical_sum: t.classical_queries,
                classical_max: t.classical_queries,
                modeled_sum: t.modeled_quantum_queries,
                modeled_max: t.modeled_quantum_queries,
                proof_bits: t.proof_bits_consumed,
            }
        })
        .reduce(Tally::default, Tally::merge);
    let accept_rate = tally.accepts as f64 / trials as f64;
    let (wilson_low, wilson_high) = wilson_interval(tally.accepts, trials);
    Ok(ReportRow {
        id: id.to_string(),
        protocol: inst.name(),
        n: inst.n(),
        eps: inst.eps(),
        k: inst.k(),
        trials,
        policy: policy.label(),
        accept_rate,
        reject_rate: 1.0 - accept_rate,
        wilson_low,
        wilson_high,
        mean_classical_queries: tally.classical_sum as f64 / trials as f64,
        max_classical_queries: tally.classical_max,
        mean_modeled_queries: tally.modeled_sum as f64 / trials as f64,
        max_modeled_queries: tally.modeled_max,
        proof_bits: inst.proof_bits() as u64,
        adversary_acceptance: adversary.as_ref().map(|a| a.acceptance),
        adversary_exhaustive: adversary.as_ref().map(|a| a.exhaustive),
        seed,
        constants_fingerprint: constants.fingerprint(),
    })
}
