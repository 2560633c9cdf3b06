use std::sync::Arc;

use proxlab::bipartite::walk::{endpoint_parity_distribution, lazy_walk_uncounted, walk_distribution};
use proxlab::bipartite::{
    gen_bipartite_expander, gen_far_nonbipartite, random_regular_graph, rapid_mixing_check, walk_length,
    BipartiteVerifier,
};
use proxlab::harness::stats::wilson_interval;
use proxlab::rng::derive_seed;
use proxlab::Constants;

#[test]
fn random_cubic_graphs_usually_mix() {
    let len = walk_length(64, 10.0);
    let mixing = (0..100)
        .filter(|&s| rapid_mixing_check(&random_regular_graph(64, 3, s).unwrap(), len))
        .count();
    assert!(mixing >= 90, "{mixing}/100");
}

#[test]
fn bipartite_expander_rows_within_bounds() {
    let len = walk_length(64, 10.0);
    let g = gen_bipartite_expander(64, 3, len, 7).unwrap().graph;
    for v in 0..64 {
        let row = walk_distribution(&g, v, len);
        assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(row.iter().all(|&p| p >= 1.0 / 128.0 && p <= 2.0 / 64.0));
    }
}

#[test]
fn honest_proof_accepts_on_n64() {
    let c = Constants::default();
    let g = gen_bipartite_expander(64, 3, walk_length(64, c.c_mix), 1).unwrap().graph;
    let v = BipartiteVerifier::new(Arc::new(g.clone()), 8, 0.1, &c).unwrap();
    let s = v.honest_proof().unwrap();
    let o = g.oracle();
    for i in 0..2000 {
        assert!(v.verify(&o, &s, derive_seed(1, 0, i)).verdict.is_accept());
    }
}

#[test]
fn walks_into_one_side_share_parity() {
    // every pair among 64 seeds from every start, on small bipartite graphs
    for n in [8, 10, 12] {
        let len = walk_length(n, 10.0);
        let g = gen_bipartite_expander(n, 3, len, n as u64).unwrap().graph;
        let colour = g.two_colouring().unwrap();
        for v in 0..n {
            let mut seen = [false; 2];
            for seed in 0..64 {
                let w = lazy_walk_uncounted(&g, v, len, seed);
                if colour[w.endpoint] == colour[0] {
                    seen[w.parity as usize] = true;
                }
            }
            assert!(!(seen[0] && seen[1]), "n={n} v={v}");
            let [even, odd] = endpoint_parity_distribution(&g, v, len);
            let side_mass = |d: &Vec<f64>| (0..n).filter(|&w| colour[w] == colour[0]).map(|w| d[w]).sum::<f64>();
            assert!(side_mass(&even) == 0.0 || side_mass(&odd) == 0.0);
        }
    }
}

#[test]
fn far_graph_rejected_under_every_proof() {
    let c = Constants::default();
    let cert = gen_far_nonbipartite(16, 3, 0.05, walk_length(16, c.c_mix), 11).unwrap();
    let eps = cert.certificate.distance.unwrap();
    assert!(eps >= 0.05);
    let g = cert.graph;
    let k = 3;
    let v = BipartiteVerifier::new(Arc::new(g.clone()), k, eps, &c).unwrap();
    let mut worst = (0.0, vec![]);
    for a in 0..16 {
        for b in a + 1..16 {
            for d in b + 1..16 {
                let p = v.acceptance_probability(&[a, b, d]);
                if p >= worst.0 {
                    worst = (p, vec![a, b, d]);
                }
            }
        }
    }
    assert!(worst.0 <= 1.0 / 3.0, "{worst:?}");
    let o = g.oracle();
    let trials = 2000;
    let rejects = (0..trials)
        .filter(|&i| !v.verify(&o, &worst.1, derive_seed(2, 0, i)).verdict.is_accept())
        .count() as u64;
    assert!(wilson_interval(rejects, trials).0 >= 0.6, "{rejects}");
}

#[test]
fn modeled_queries_respect_schedule_bound() {
    let c = Constants::default();
    let cert = gen_far_nonbipartite(16, 3, 0.05, walk_length(16, c.c_mix), 4).unwrap();
    let g = cert.graph;
    let v = BipartiteVerifier::new(Arc::new(g.clone()), 4, 0.05, &c).unwrap();
    let o = g.oracle();
    let mut total = (0, 0);
    for i in 0..200 {
        let t = v.verify(&o, &[0, 5, 9, 12], i);
        assert!(t.modeled_quantum_queries <= v.max_modeled_queries());
        total.0 += t.classical_queries;
        total.1 += t.modeled_quantum_queries;
    }
    assert_eq!((o.queries(), o.modeled_queries()), total);
}
