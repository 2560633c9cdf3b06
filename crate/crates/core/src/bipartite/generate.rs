//! Random graph families with certificates.

use rand::seq::SliceRandom;

use super::graph::BoundedDegreeGraph;
use super::walk::rapid_mixing_check;
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, TrialRng};

pub const GENERATOR_ATTEMPTS: usize = 500;

#[derive(Debug, Clone, PartialEq)]
pub struct GraphCertificate {
    pub bipartite: bool,
    /// Exact distance to bipartiteness (up to 24 vertices).
    pub distance: Option<f64>,
    /// Local-search upper bound on the distance.
    pub distance_upper_bound: f64,
    pub walk_len: usize,
    pub rapid_mixing: bool,
    /// Samples drawn before acceptance.
    pub attempts: usize,
}

#[derive(Debug, Clone)]
pub struct CertifiedGraph {
    pub graph: BoundedDegreeGraph,
    pub certificate: GraphCertificate,
}

fn certify(graph: &BoundedDegreeGraph, walk_len: usize, attempts: usize, rapid_mixing: bool) -> GraphCertificate {
    GraphCertificate {
        bipartite: graph.is_bipartite(),
        distance: graph.distance_to_bipartite(),
        distance_upper_bound: graph.distance_upper_bound(),
        walk_len,
        rapid_mixing,
        attempts,
    }
}

/// Union of `d` uniform perfect matchings between `{0..n/2}` and
/// `{n/2..n}`; `None` if two matchings share an edge.
fn matching_union(n: usize, d: usize, rng: &mut TrialRng) -> Option<BoundedDegreeGraph> {
    let h = n / 2;
    let mut adj = vec![Vec::with_capacity(d); n];
    for _ in 0..d {
        let mut perm: Vec<usize> = (0..h).collect();
        perm.shuffle(rng);
        for (a, &p) in perm.iter().enumerate() {
            let b = h + p;
            if adj[a].contains(&b) {
                return None;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    BoundedDegreeGraph::new(d, adj).ok()
}

/// Configuration-model `d`-regular graph; `None` on a loop or parallel edge.
fn random_regular(n: usize, d: usize, rng: &mut TrialRng) -> Option<BoundedDegreeGraph> {
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    points.shuffle(rng);
    let mut adj = vec![Vec::with_capacity(d); n];
    for pair in points.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        if a == b || adj[a].contains(&b) {
            return None;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    BoundedDegreeGraph::new(d, adj).ok()
}

/// Uniform simple `d`-regular graph by rejection from the configuration
/// model, with no mixing or distance requirement.
pub fn random_regular_graph(n: usize, d: usize, seed: u64) -> Result<BoundedDegreeGraph> {
    if n * d % 2 == 1 || d == 0 || d >= n {
        return Err(Error::Config(format!("no simple {d}-regular graph on {n} vertices")));
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        if let Some(g) = random_regular(n, d, &mut rng) {
            return Ok(g);
        }
    }
    Err(Error::BudgetExhausted {
        attempts: GENERATOR_ATTEMPTS,
        diagnostics: format!("n={n} d={d}: every configuration had a loop or parallel edge"),
    })
}

/// Bipartite `d`-regular graph with sides `[0, n/2)` and `[n/2, n)`,
/// resampled until the `walk_len`-step walk mixes.
pub fn gen_bipartite_expander(n: usize, d: usize, walk_len: usize, seed: u64) -> Result<CertifiedGraph> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Config(format!("bipartite generator needs even n ≥ 2, got {n}")));
    }
    if d == 0 || d > n / 2 {
        return Err(Error::Config(format!("degree {d} impossible with sides of {}", n / 2)));
    }
    let mut rng = rng_from_seed(seed);
    let (mut simple_fail, mut mixing_fail) = (0, 0);
    for attempt in 1..=GENERATOR_ATTEMPTS {
        let Some(g) = matching_union(n, d, &mut rng) else {
            simple_fail += 1;
            continue;
        };
        if !rapid_mixing_check(&g, walk_len) {
            mixing_fail += 1;
            continue;
        }
        let certificate = certify(&g, walk_len, attempt, true);
        return Ok(CertifiedGraph { graph: g, certificate });
    }
    Err(Error::BudgetExhausted {
        attempts: GENERATOR_ATTEMPTS,
        diagnostics: format!(
            "n={n} d={d} walk_len={walk_len}: {simple_fail} non-simple samples, {mixing_fail} failed the mixing check"
        ),
    })
}

/// Random `d`-regular graph resampled until it mixes and, for `n ≤ 24`,
/// its exact distance to bipartiteness is at least `eps_target`. Above 24
/// vertices the local-search upper bound must reach `eps_target` and the
/// certificate carries no exact distance.
pub fn gen_far_nonbipartite(n: usize, d: usize, eps_target: f64, walk_len: usize, seed: u64) -> Result<CertifiedGraph> {
    if n * d % 2 == 1 || d == 0 || d >= n {
        return Err(Error::Config(format!("no simple {d}-regular graph on {n} vertices")));
    }
    let mut rng = rng_from_seed(seed);
    let (mut simple_fail, mut near_fail, mut mixing_fail) = (0, 0, 0);
    let mut best = 0.0f64;
    for attempt in 1..=GENERATOR_ATTEMPTS {
        let Some(g) = random_regular(n, d, &mut rng) else {
            simple_fail += 1;
            continue;
        };
        let dist = g.distance_to_bipartite().unwrap_or_else(|| g.distance_upper_bound());
        best = best.max(dist);
        if dist < eps_target {
            near_fail += 1;
            continue;
        }
        if !rapid_mixing_check(&g, walk_len) {
            mixing_fail += 1;
            continue;
        }
        let certificate = certify(&g, walk_len, attempt, true);
        return Ok(CertifiedGraph { graph: g, certificate });
    }
    Err(Error::BudgetExhausted {
        attempts: GENERATOR_ATTEMPTS,
        diagnostics: format!(
            "n={n} d={d} target={eps_target}: {simple_fail} non-simple, {near_fail} too close \
             (best distance {best:.4}), {mixing_fail} failed the mixing check"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::walk::walk_length;

    fn structural(g: &BoundedDegreeGraph) {
        for v in 0..g.n {
            assert!(g.degree(v) <= g.d);
            for &w in &g.adj[v] {
                assert!(g.adj[w].contains(&v));
            }
        }
    }

    #[test]
    fn small_bipartite_graph() {
        let c = gen_bipartite_expander(8, 3, walk_length(8, 10.0), 1).unwrap();
        assert!(c.certificate.bipartite);
        assert_eq!(c.certificate.distance, Some(0.0));
        let colour = c.graph.two_colouring().unwrap();
        assert!((0..4).all(|v| colour[v] == colour[0]));
        structural(&c.graph);
    }

    #[test]
    fn far_graph_on_sixteen() {
        let c = gen_far_nonbipartite(16, 3, 0.05, walk_length(16, 10.0), 2).unwrap();
        assert!(c.certificate.distance.unwrap() >= 0.05);
        assert!(!c.certificate.bipartite);
        assert!(c.certificate.distance_upper_bound >= c.certificate.distance.unwrap());
        structural(&c.graph);
    }

    #[test]
    fn impossible_targets_exhaust_the_budget() {
        let e = gen_far_nonbipartite(8, 3, 0.9, 30, 0).unwrap_err();
        assert!(matches!(e, Error::BudgetExhausted { .. }));
        assert!(gen_bipartite_expander(7, 3, 30, 0).is_err());
    }
}
