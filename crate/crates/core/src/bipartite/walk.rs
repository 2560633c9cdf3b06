//! Lazy random walks with parity tracking, and their exact distributions.
//!
//! One step from `w`: a fair coin decides whether to stay; otherwise an
//! index `i ∈ [d]` is drawn and the oracle is probed at `(w, i)`. A vertex
//! answer moves the walk and flips the parity, ⊥ leaves it in place. So
//! each neighbour is reached with probability `1/(2d)` and the walk stays
//! with probability `1 − d_w/(2d)`.

use rand::Rng;
use rayon::prelude::*;

use super::graph::BoundedDegreeGraph;
use crate::oracle::{AdjacencyList, CountingOracle};
use crate::rng::{rng_from_seed, TrialRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepChoice {
    pub moves: bool,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkOutcome {
    pub endpoint: usize,
    /// Number of steps that changed vertex, mod 2.
    pub parity: u8,
    pub seed: u64,
    /// Oracle probes made.
    pub probes: u64,
}

/// The per-step randomness a 64-bit walk seed expands to.
pub fn step_choices(seed: u64, d: usize, len: usize) -> Vec<StepChoice> {
    let mut rng = rng_from_seed(seed);
    (0..len)
        .map(|_| {
            let moves = rng.gen::<bool>();
            let index = rng.gen_range(0..d);
            StepChoice { moves, index }
        })
        .collect()
}

fn walk_by(v: usize, choices: &[StepChoice], mut probe: impl FnMut(usize, usize) -> Option<usize>) -> (usize, u8, u64) {
    let (mut w, mut parity, mut probes) = (v, 0u8, 0u64);
    for c in choices {
        if !c.moves {
            continue;
        }
        probes += 1;
        if let Some(u) = probe(w, c.index) {
            w = u;
            parity ^= 1;
        }
    }
    (w, parity, probes)
}

/// `ℓ` lazy steps from `v` driven by `seed`, reading through the oracle.
pub fn lazy_walk(oracle: &CountingOracle<AdjacencyList>, v: usize, len: usize, seed: u64) -> WalkOutcome {
    let d = oracle.payload().degree_bound;
    replay_walk(oracle, v, &step_choices(seed, d, len), seed)
}

/// Walks along explicit step choices through the oracle.
pub fn replay_walk(oracle: &CountingOracle<AdjacencyList>, v: usize, choices: &[StepChoice], seed: u64) -> WalkOutcome {
    let (endpoint, parity, probes) = walk_by(v, choices, |w, i| oracle.read((w, i)));
    WalkOutcome {
        endpoint,
        parity,
        seed,
        probes,
    }
}

/// Same walk as [`lazy_walk`] without touching any counter.
pub fn lazy_walk_uncounted(g: &BoundedDegreeGraph, v: usize, len: usize, seed: u64) -> WalkOutcome {
    let (endpoint, parity, probes) = walk_by(v, &step_choices(seed, g.d, len), |w, i| g.adj[w].get(i).copied());
    WalkOutcome {
        endpoint,
        parity,
        seed,
        probes,
    }
}

/// One lazy step applied to a distribution over `(vertex, parity)`, stored
/// as `dist[2·w + parity]`.
fn parity_step(g: &BoundedDegreeGraph, dist: &[f64]) -> Vec<f64> {
    let move_p = 1.0 / (2 * g.d) as f64;
    let mut next = vec![0.0; dist.len()];
    for w in 0..g.n {
        let stay = 1.0 - g.degree(w) as f64 * move_p;
        for par in 0..2 {
            let m = dist[2 * w + par];
            if m == 0.0 {
                continue;
            }
            next[2 * w + par] += stay * m;
            for &u in &g.adj[w] {
                next[2 * u + (1 - par)] += move_p * m;
            }
        }
    }
    next
}

/// Exact law of `(endpoint, parity)` after `len` steps from `v`, as
/// `[P(·, parity 0), P(·, parity 1)]`.
pub fn endpoint_parity_distribution(g: &BoundedDegreeGraph, v: usize, len: usize) -> [Vec<f64>; 2] {
    let mut dist = vec![0.0; 2 * g.n];
    dist[2 * v] = 1.0;
    for _ in 0..len {
        dist = parity_step(g, &dist);
    }
    let even = (0..g.n).map(|w| dist[2 * w]).collect();
    let odd = (0..g.n).map(|w| dist[2 * w + 1]).collect();
    [even, odd]
}

/// Row `v` of the `len`-step lazy-walk matrix.
pub fn walk_distribution(g: &BoundedDegreeGraph, v: usize, len: usize) -> Vec<f64> {
    let [even, odd] = endpoint_parity_distribution(g, v, len);
    even.iter().zip(&odd).map(|(a, b)| a + b).collect()
}

/// True iff every entry of the `len`-step lazy-walk matrix lies in
/// `[1/(2n), 2/n]`.
pub fn rapid_mixing_check(g: &BoundedDegreeGraph, len: usize) -> bool {
    if g.n == 0 {
        return false;
    }
    let n = g.n as f64;
    let (lo, hi) = (1.0 / (2.0 * n), 2.0 / n);
    (0..g.n).into_par_iter().all(|v| {
        walk_distribution(g, v, len)
            .iter()
            .all(|&p| p >= lo - 1e-12 && p <= hi + 1e-12)
    })
}

/// `⌈c_mix · log₂ n⌉`, at least 1.
pub fn walk_length(n: usize, c_mix: f64) -> usize {
    ((c_mix * (n.max(2) as f64).log2()).ceil() as usize).max(1)
}

/// For each remaining-step count `r ≤ len`, the probability that a walk
/// from `(w, parity)` with `r` steps left ends in `targets` with final
/// parity `want`; indexed `[r][2·w + parity]`.
pub fn hitting_table(g: &BoundedDegreeGraph, targets: &[bool], want: u8, len: usize) -> Vec<Vec<f64>> {
    let move_p = 1.0 / (2 * g.d) as f64;
    let mut table = Vec::with_capacity(len + 1);
    let base: Vec<f64> = (0..2 * g.n)
        .map(|s| (targets[s / 2] && (s % 2) as u8 == want) as u8 as f64)
        .collect();
    table.push(base);
    for r in 1..=len {
        let prev = &table[r - 1];
        let row: Vec<f64> = (0..2 * g.n)
            .map(|s| {
                let (w, par) = (s / 2, s % 2);
                let stay = 1.0 - g.degree(w) as f64 * move_p;
                stay * prev[s] + g.adj[w].iter().map(|&u| move_p * prev[2 * u + 1 - par]).sum::<f64>()
            })
            .collect();
        table.push(row);
    }
    table
}

/// Draws step choices for a walk from `v` conditioned on ending in the
/// target set with the parity `table` was built for. Requires
/// `table[len][2v] > 0`.
pub fn conditioned_choices(
    g: &BoundedDegreeGraph,
    table: &[Vec<f64>],
    v: usize,
    rng: &mut TrialRng,
) -> Vec<StepChoice> {
    let len = table.len() - 1;
    let half = 0.5;
    let per_index = 1.0 / (2 * g.d) as f64;
    let (mut w, mut par) = (v, 0usize);
    let mut out = Vec::with_capacity(len);
    for r in (1..=len).rev() {
        let prev = &table[r - 1];
        // option 0 is the lazy coin, option 1 + i probes index i
        let mut weights = Vec::with_capacity(g.d + 1);
        weights.push(half * prev[2 * w + par]);
        for i in 0..g.d {
            let s = match g.adj[w].get(i) {
                Some(&u) => 2 * u + 1 - par,
                None => 2 * w + par,
            };
            weights.push(per_index * prev[s]);
        }
        let pick = crate::protocol::verify::sample_index(&weights, rng);
        if pick == 0 {
            out.push(StepChoice { moves: false, index: 0 });
        } else {
            let i = pick - 1;
            out.push(StepChoice { moves: true, index: i });
            if let Some(&u) = g.adj[w].get(i) {
                w = u;
                par ^= 1;
            }
        }
    }
    out
}
