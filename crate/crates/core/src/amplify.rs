//! Amplitude amplification model.
//!
//! A one-sided base routine that rejects with probability `γ'` is amplified
//! by `m` Grover iterations into one that rejects with probability
//! `sin²((2m+1)·arcsin √γ')`, at a cost of `2m+1` base invocations. Since
//! only a floor on `γ'` is known, the iteration count is drawn from a
//! doubling schedule: for `s = 0..=S` with `S = ⌈log₂(1/√γ_floor)⌉`, draw `m`
//! uniformly from `[0, 2^s)` and run one amplified trial; the whole schedule
//! is repeated a fixed number of times. Each trial ends in a measurement, and
//! the measured random string drives one classical execution of the base
//! routine; those executions are what the classical query counter sees.

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::TrialRng;
use crate::trace::Verdict;

/// `sin²((2m+1)·arcsin √p)`.
pub fn amplified_success(p_base: f64, iterations: u64) -> f64 {
    let p = p_base.clamp(0.0, 1.0);
    let theta = p.sqrt().asin();
    let s = ((2 * iterations + 1) as f64 * theta).sin();
    s * s
}

/// A seeded one-sided decision procedure whose exact rejection probability
/// the simulator can compute.
pub trait OneSidedRoutine {
    /// Probability that one invocation rejects, computed exactly.
    fn rejection_probability(&self) -> f64;

    /// Queries one invocation costs in the quantum model.
    fn cost_per_invocation(&self) -> u64;

    /// Performs one classical execution of the routine with randomness drawn
    /// conditioned on the measured outcome, reading through the oracle.
    /// `reject == true` is only requested when the rejection probability is
    /// positive.
    fn measured_execution(&self, rng: &mut TrialRng, reject: bool);
}

/// Stage structure of the doubling schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    /// `2^s` for each stage `s`; iterations are drawn from `[0, 2^s)`.
    pub stage_bounds: Vec<u64>,
    pub repeats: u32,
}

impl Schedule {
    pub fn for_gamma_floor(gamma_floor: f64, repeats: u32) -> Result<Self> {
        if !(gamma_floor > 0.0) || !gamma_floor.is_finite() {
            return Err(Error::Config(format!(
                "gamma_floor must be positive, got {gamma_floor}"
            )));
        }
        if repeats == 0 {
            return Err(Error::Config("schedule needs at least one repeat".into()));
        }
        let gamma = gamma_floor.min(1.0);
        // smallest S with 4^S · γ ≥ 1, i.e. 2^S ≥ 1/√γ
        let mut stages = 0u32;
        while 4f64.powi(stages as i32) * gamma < 1.0 - 1e-12 {
            stages += 1;
        }
        Ok(Self {
            stage_bounds: (0..=stages).map(|s| 1u64 << s).collect(),
            repeats,
        })
    }

    /// Worst-case base invocations over all draws.
    pub fn max_invocations(&self) -> u64 {
        let per_rep: u64 = self.stage_bounds.iter().map(|&b| 2 * (b - 1) + 1).sum();
        per_rep * self.repeats as u64
    }

    /// Expected base invocations when no trial rejects.
    pub fn expected_invocations_no_reject(&self) -> u64 {
        // E[2m+1] with m uniform on [0, b) is b
        self.stage_bounds.iter().sum::<u64>() * self.repeats as u64
    }

    pub fn trials(&self) -> usize {
        self.stage_bounds.len() * self.repeats as usize
    }

    /// Exact probability that the schedule rejects when the base rejects with
    /// probability `gamma`.
    pub fn rejection_probability(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return 0.0;
        }
        let mut accept = 1.0;
        for _ in 0..self.repeats {
            for &b in &self.stage_bounds {
                let avg = (0..b).map(|m| amplified_success(gamma, m)).sum::<f64>() / b as f64;
                accept *= 1.0 - avg;
            }
        }
        1.0 - accept
    }
}

/// A base routine wrapped with a gamma floor and its schedule.
pub struct AmplifiedRoutine<'a> {
    pub base: &'a dyn OneSidedRoutine,
    pub gamma_floor: f64,
    pub schedule: Schedule,
    pub cost_multiplier: u64,
}

impl<'a> AmplifiedRoutine<'a> {
    pub fn new(base: &'a dyn OneSidedRoutine, gamma_floor: f64, repeats: u32) -> Result<Self> {
        Ok(Self {
            base,
            gamma_floor,
            schedule: Schedule::for_gamma_floor(gamma_floor, repeats)?,
            cost_multiplier: base.cost_per_invocation(),
        })
    }

    /// Exact rejection probability of [`run_amplified`] on this routine.
    pub fn rejection_probability(&self) -> f64 {
        self.schedule
            .rejection_probability(self.base.rejection_probability())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmplifiedOutcome {
    pub verdict: Verdict,
    pub trials: u64,
    pub base_invocations: u64,
    /// `base_invocations × cost_multiplier`.
    pub modeled_queries: u64,
}

/// Runs the schedule, stopping at the first rejecting trial.
pub fn run_amplified(routine: &AmplifiedRoutine<'_>, rng: &mut TrialRng) -> AmplifiedOutcome {
    let gamma = routine.base.rejection_probability();
    let mut trials = 0u64;
    let mut invocations = 0u64;
    for _ in 0..routine.schedule.repeats {
        for &bound in &routine.schedule.stage_bounds {
            let m = rng.gen_range(0..bound);
            invocations += 2 * m + 1;
            trials += 1;
            let p = amplified_success(gamma, m);
            let reject = p > 0.0 && rng.gen::<f64>() < p;
            routine.base.measured_execution(rng, reject);
            if reject {
                return AmplifiedOutcome {
                    verdict: Verdict::Reject,
                    trials,
                    base_invocations: invocations,
                    modeled_queries: invocations * routine.cost_multiplier,
                };
            }
        }
    }
    AmplifiedOutcome {
        verdict: Verdict::Accept,
        trials,
        base_invocations: invocations,
        modeled_queries: invocations * routine.cost_multiplier,
    }
}
