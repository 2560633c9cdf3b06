//! Bipartiteness verifier: the proof names `k` vertices `S`, claimed to lie
//! on one side. One base invocation samples a start `v`, runs `|T|` seeded
//! lazy walks from `v`, labels each walk `(a, b)` with `a = [end ∈ S]` and
//! `b` its parity, and rejects iff collision finding returns two walks
//! labelled `(1, b)` and `(1, 1−b)`. The base routine is amplified.
//!
//! The base rejection probability is computed exactly: from `v` with
//! `p_b = P[end ∈ S, parity b]`, some pair of `t` i.i.d. walks collides
//! with probability `1 − (1−p₀)^t − (1−p₁)^t + (1−p₀−p₁)^t`.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use super::graph::BoundedDegreeGraph;
use super::walk::{
    conditioned_choices, endpoint_parity_distribution, hitting_table, lazy_walk, lazy_walk_uncounted, replay_walk,
    walk_length,
};
use crate::amplify::{run_amplified, AmplifiedRoutine, OneSidedRoutine, Schedule};
use crate::collision::{collision_evaluations, find_collision, CollisionInstance};
use crate::config::Constants;
use crate::error::{Error, Result};
use crate::oracle::{ceil_log2, AdjacencyList, CountingOracle};
use crate::protocol::verify::sample_index;
use crate::protocol::{bits_of, value_of};
use crate::rng::{rng_from_seed, TrialRng};
use crate::trace::VerdictTrace;

pub type WalkLabel = (u8, u8);

/// `(1, b)` against `(1, 1−b)`.
pub fn parity_collision(a: &WalkLabel, b: &WalkLabel) -> bool {
    a.0 == 1 && b.0 == 1 && a.1 != b.1
}

#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteParams {
    pub walk_len: usize,
    /// `|T|`.
    pub walks: usize,
    pub gamma_floor: f64,
    /// Modeled queries per base invocation.
    pub cost_per_invocation: u64,
}

pub fn bipartite_params(n: usize, k: usize, eps: f64, c: &Constants) -> Result<BipartiteParams> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Config(format!("proximity parameter must lie in (0, 1], got {eps}")));
    }
    if k == 0 || k > n {
        return Err(Error::Config(format!("proof size k={k} outside 1..={n}")));
    }
    let log_n = (n.max(2) as f64).log2();
    let walk_len = walk_length(n, c.c_mix);
    let walks = (c.c_t * (n as f64 / k as f64) * log_n / eps).ceil() as usize;
    let gamma_floor = (c.c_gamma * eps / log_n).min(1.0);
    let cost_per_invocation = collision_evaluations(walks, 4, c.c_col, c.col_polylog_exp) * walk_len as u64;
    Ok(BipartiteParams {
        walk_len,
        walks,
        gamma_floor,
        cost_per_invocation,
    })
}

/// Verifier state for one graph and `(k, ε)`: the exact endpoint-parity
/// law of the walk from every start vertex.
pub struct BipartiteVerifier {
    pub graph: Arc<BoundedDegreeGraph>,
    pub k: usize,
    pub eps: f64,
    pub params: BipartiteParams,
    pub schedule: Schedule,
    constants: Constants,
    ends: Vec<[Vec<f64>; 2]>,
}

impl BipartiteVerifier {
    pub fn new(graph: Arc<BoundedDegreeGraph>, k: usize, eps: f64, c: &Constants) -> Result<Self> {
        c.validate()?;
        let params = bipartite_params(graph.n, k, eps, c)?;
        let schedule = Schedule::for_gamma_floor(params.gamma_floor, c.amp_repeats)?;
        let ends = (0..graph.n)
            .into_par_iter()
            .map(|v| endpoint_parity_distribution(&graph, v, params.walk_len))
            .collect();
        Ok(Self {
            graph,
            k,
            eps,
            params,
            schedule,
            constants: c.clone(),
            ends,
        })
    }

    /// `k·⌈log₂ n⌉`.
    pub fn proof_bits(&self) -> usize {
        self.k * ceil_log2(self.graph.n as u64).max(1) as usize
    }

    /// `k` distinct in-range names.
    pub fn is_well_formed(&self, proof: &[usize]) -> bool {
        if proof.len() != self.k || proof.iter().any(|&v| v >= self.graph.n) {
            return false;
        }
        let mut seen = vec![false; self.graph.n];
        proof.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn encode_proof(&self, proof: &[usize]) -> Vec<u8> {
        let w = ceil_log2(self.graph.n as u64).max(1) as usize;
        proof.iter().flat_map(|&v| bits_of(v as u64, w)).collect()
    }

    pub fn decode_proof(&self, bits: &[u8]) -> Option<Vec<usize>> {
        let w = ceil_log2(self.graph.n as u64).max(1) as usize;
        if bits.len() != self.k * w || bits.iter().any(|&b| b > 1) {
            return None;
        }
        let names: Vec<usize> = bits.chunks(w).map(|c| value_of(c) as usize).collect();
        self.is_well_formed(&names).then_some(names)
    }

    /// The `k` smallest vertices on the side of vertex 0, when the graph is
    /// bipartite and that side is large enough.
    pub fn honest_proof(&self) -> Option<Vec<usize>> {
        let colour = self.graph.two_colouring()?;
        let side: Vec<usize> = (0..self.graph.n).filter(|&v| colour[v] == colour[0]).collect();
        (side.len() >= self.k).then(|| side[..self.k].to_vec())
    }

    /// `(p₀, p₁)` from every start vertex.
    pub fn hit_probabilities(&self, proof: &[usize]) -> Vec<[f64; 2]> {
        self.ends
            .iter()
            .map(|[even, odd]| {
                let p0 = proof.iter().map(|&w| even[w]).sum::<f64>();
                let p1 = proof.iter().map(|&w| odd[w]).sum::<f64>();
                [p0.min(1.0), p1.min(1.0)]
            })
            .collect()
    }

    /// Per-start collision probability among `|T|` walks.
    pub fn rejection_by_start(&self, proof: &[usize]) -> Vec<f64> {
        let t = self.params.walks as f64;
        self.hit_probabilities(proof)
            .iter()
            .map(|&[p0, p1]| {
                if p0 <= 0.0 || p1 <= 0.0 {
                    return 0.0;
                }
                let miss0 = (t * (-p0).ln_1p()).exp();
                let miss1 = (t * (-p1).ln_1p()).exp();
                let miss_both = (t * (-(p0 + p1).min(1.0)).ln_1p()).exp();
                (1.0 - miss0 - miss1 + miss_both).clamp(0.0, 1.0)
            })
            .collect()
    }

    /// Exact rejection probability of one base invocation.
    pub fn base_rejection(&self, proof: &[usize]) -> f64 {
        if !self.is_well_formed(proof) {
            return 1.0;
        }
        let r = self.rejection_by_start(proof);
        r.iter().sum::<f64>() / r.len() as f64
    }

    pub fn acceptance_probability(&self, proof: &[usize]) -> f64 {
        if !self.is_well_formed(proof) {
            return 0.0;
        }
        1.0 - self.schedule.rejection_probability(self.base_rejection(proof))
    }

    pub fn max_modeled_queries(&self) -> u64 {
        self.schedule.max_invocations() * self.params.cost_per_invocation
    }

    /// One literal base invocation on uncounted walks: sample `v`, draw
    /// `|T|` walk seeds, collision-find. Returns true on reject.
    pub fn sample_base_routine(&self, proof: &[usize], rng: &mut TrialRng) -> bool {
        let mut in_s = vec![false; self.graph.n];
        for &w in proof {
            in_s[w] = true;
        }
        let v = rng.gen_range(0..self.graph.n);
        let seeds: Vec<u64> = (0..self.params.walks).map(|_| rng.gen()).collect();
        let g = &self.graph;
        let len = self.params.walk_len;
        let inst = CollisionInstance {
            domain: seeds,
            map: |&s: &u64| {
                let w = lazy_walk_uncounted(g, v, len, s);
                (in_s[w.endpoint] as u8, w.parity)
            },
            relation: parity_collision,
            codomain_size: 4,
            cost_per_evaluation: len as u64,
        };
        find_collision(&inst, self.constants.c_col, self.constants.col_polylog_exp, rng)
            .pair
            .is_some()
    }

    /// Runs the amplified verifier against `oracle`, whose counters
    /// accumulate; the trace reports this run's increments.
    pub fn verify(&self, oracle: &CountingOracle<AdjacencyList>, proof: &[usize], seed: u64) -> VerdictTrace {
        if !self.is_well_formed(proof) {
            return VerdictTrace::reject_without_queries(self.proof_bits() as u64, seed);
        }
        let (q0, m0) = (oracle.queries(), oracle.modeled_queries());
        let base = BaseRoutine::new(self, oracle, proof);
        let routine = AmplifiedRoutine {
            base: &base,
            gamma_floor: self.params.gamma_floor,
            schedule: self.schedule.clone(),
            cost_multiplier: self.params.cost_per_invocation,
        };
        let mut rng = rng_from_seed(seed);
        let out = run_amplified(&routine, &mut rng);
        oracle.charge_modeled(out.modeled_queries);
        VerdictTrace {
            verdict: out.verdict,
            classical_queries: oracle.queries() - q0,
            modeled_quantum_queries: oracle.modeled_queries() - m0,
            proof_bits_consumed: self.proof_bits() as u64,
            seed,
        }
    }
}

/// The base routine bound to one oracle and proof. Its measured execution
/// replays, through the oracle, the walks a classical run of the measured
/// outcome reads: on reject the colliding pair, drawn exactly conditioned
/// on hitting `S` with each parity; on accept one walk from a start drawn
/// conditioned on no collision.
struct BaseRoutine<'a> {
    verifier: &'a BipartiteVerifier,
    oracle: &'a CountingOracle<AdjacencyList>,
    by_start: Vec<f64>,
    gamma: f64,
    tables: [Vec<Vec<f64>>; 2],
}

impl<'a> BaseRoutine<'a> {
    fn new(verifier: &'a BipartiteVerifier, oracle: &'a CountingOracle<AdjacencyList>, proof: &[usize]) -> Self {
        let by_start = verifier.rejection_by_start(proof);
        let gamma = by_start.iter().sum::<f64>() / by_start.len() as f64;
        let mut targets = vec![false; verifier.graph.n];
        for &w in proof {
            targets[w] = true;
        }
        let len = verifier.params.walk_len;
        let tables = if gamma > 0.0 {
            [
                hitting_table(&verifier.graph, &targets, 0, len),
                hitting_table(&verifier.graph, &targets, 1, len),
            ]
        } else {
            [Vec::new(), Vec::new()]
        };
        Self {
            verifier,
            oracle,
            by_start,
            gamma,
            tables,
        }
    }
}

impl OneSidedRoutine for BaseRoutine<'_> {
    fn rejection_probability(&self) -> f64 {
        self.gamma
    }

    fn cost_per_invocation(&self) -> u64 {
        self.verifier.params.cost_per_invocation
    }

    fn measured_execution(&self, rng: &mut TrialRng, reject: bool) {
        let g = &self.verifier.graph;
        let len = self.verifier.params.walk_len;
        if reject {
            let v = sample_index(&self.by_start, rng);
            for table in &self.tables {
                let choices = conditioned_choices(g, table, v, rng);
                replay_walk(self.oracle, v, &choices, 0);
            }
        } else {
            let weights: Vec<f64> = self.by_start.iter().map(|r| 1.0 - r).collect();
            let v = sample_index(&weights, rng);
            lazy_walk(self.oracle, v, len, rng.gen());
        }
    }
}

pub fn bipartite_verify(
    graph: &BoundedDegreeGraph,
    k: usize,
    proof: &[usize],
    eps: f64,
    c: &Constants,
    seed: u64,
) -> Result<VerdictTrace> {
    let v = BipartiteVerifier::new(Arc::new(graph.clone()), k, eps, c)?;
    Ok(v.verify(&graph.oracle(), proof, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::generate::{gen_bipartite_expander, gen_far_nonbipartite};
    use crate::trace::Verdict;

    #[test]
    fn relation_is_symmetric() {
        let labels = [(0, 0), (0, 1), (1, 0), (1, 1)];
        for a in labels {
            for b in labels {
                assert_eq!(parity_collision(&a, &b), parity_collision(&b, &a));
            }
        }
        assert!(parity_collision(&(1, 0), &(1, 1)));
        assert!(!parity_collision(&(1, 0), &(0, 1)));
    }

    #[test]
    fn honest_proof_on_bipartite_graph_never_rejects() {
        let c = Constants::default();
        let g = gen_bipartite_expander(16, 3, walk_length(16, c.c_mix), 3).unwrap().graph;
        let v = BipartiteVerifier::new(Arc::new(g.clone()), 4, 0.1, &c).unwrap();
        let s = v.honest_proof().unwrap();
        assert_eq!(v.base_rejection(&s), 0.0);
        assert_eq!(v.acceptance_probability(&s), 1.0);
        let o = g.oracle();
        for seed in 0..200 {
            let t = v.verify(&o, &s, seed);
            assert!(t.verdict.is_accept());
            assert!(t.modeled_quantum_queries <= v.max_modeled_queries());
        }
    }

    #[test]
    fn malformed_proofs_reject_without_reading() {
        let c = Constants::default();
        let g = gen_bipartite_expander(8, 3, walk_length(8, c.c_mix), 0).unwrap().graph;
        let o = g.oracle();
        let v = BipartiteVerifier::new(Arc::new(g), 2, 0.2, &c).unwrap();
        for bad in [vec![0], vec![0, 0], vec![0, 9]] {
            let t = v.verify(&o, &bad, 1);
            assert_eq!(t.verdict, Verdict::Reject);
        }
        assert_eq!((o.queries(), o.modeled_queries()), (0, 0));
        assert_eq!(v.decode_proof(&v.encode_proof(&[3, 5])), Some(vec![3, 5]));
        assert_eq!(v.decode_proof(&v.encode_proof(&[3, 3])), None);
    }

    #[test]
    fn exact_base_rate_matches_literal_routine() {
        let c = Constants {
            c_t: 0.3,
            ..Constants::default()
        };
        let g = gen_far_nonbipartite(12, 3, 0.05, walk_length(12, c.c_mix), 5).unwrap().graph;
        let v = BipartiteVerifier::new(Arc::new(g), 2, 0.5, &c).unwrap();
        let proof = [0, 1];
        let exact = v.base_rejection(&proof);
        assert!(exact > 0.1 && exact < 0.9, "{exact}");
        let mut rng = rng_from_seed(9);
        let trials = 4000;
        let hits = (0..trials).filter(|_| v.sample_base_routine(&proof, &mut rng)).count();
        let f = hits as f64 / trials as f64;
        assert!((f - exact).abs() < 0.03, "{f} vs {exact}");
    }

    #[test]
    fn rejecting_runs_read_two_conditioned_walks() {
        let c = Constants::default();
        let g = gen_far_nonbipartite(16, 3, 0.05, walk_length(16, c.c_mix), 2).unwrap().graph;
        let v = BipartiteVerifier::new(Arc::new(g.clone()), 4, 0.05, &c).unwrap();
        let o = g.oracle();
        let t = v.verify(&o, &[0, 1, 2, 3], 17);
        assert_eq!(t.verdict, Verdict::Reject);
        assert!(t.classical_queries <= 2 * v.params.walk_len as u64 * v.schedule.trials() as u64);
        assert_eq!(t.modeled_quantum_queries % v.params.cost_per_invocation, 0);
    }
}
