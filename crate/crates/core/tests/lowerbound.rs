use proxlab::codes::kwise::kwise_check;
use proxlab::codes::linear::random_linear_code;
use proxlab::lowerbound::thrdeg::max_correlation;
use proxlab::lowerbound::{dual_certificate, threshold_degree, upp_sampler, PartialBooleanFunction};
use proxlab::rng::rng_from_seed;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_partial(n: usize, seed: u64) -> PartialBooleanFunction {
    let mut rng = rng_from_seed(seed);
    let mut domain: Vec<u32> = (0u32..1 << n).filter(|_| rng.gen_bool(0.7)).collect();
    if domain.is_empty() {
        domain.push(0);
    }
    let values = domain.iter().map(|_| if rng.gen() { 1 } else { -1 }).collect();
    PartialBooleanFunction::new(n, domain, values).unwrap()
}

#[test]
fn parity_three_dual_witness_at_degree_two() {
    let f = PartialBooleanFunction::parity(3);
    let cert = dual_certificate(&f, 2).unwrap().unwrap();
    assert!(max_correlation(&f, &cert.weights, 2) <= 1e-9);
    assert!(dual_certificate(&f, 3).unwrap().is_none());
}

#[test]
fn kwise_independent_pair_has_high_threshold_degree() {
    let mut checked = 0;
    for seed in 0..40 {
        let n = 6 + (seed as usize % 3);
        let code = random_linear_code(n, n - 2, seed).unwrap();
        let k = code.dual_distance() - 1;
        if k < 2 {
            continue;
        }
        let pi = code.codewords();
        let shift = (1u32..1 << n).find(|s| !pi.contains(s)).unwrap();
        let companion: Vec<u32> = pi.iter().map(|c| c ^ shift).collect();
        assert!(kwise_check(&pi, n, k) && kwise_check(&companion, n, k));
        let f = PartialBooleanFunction::from_sets(n, &pi, &companion).unwrap();
        let t = threshold_degree(&f).unwrap();
        assert!(t.degree >= k, "seed {seed}: degree {} < {k}", t.degree);
        checked += 1;
    }
    assert!(checked >= 5);
}

#[test]
fn invariant_under_negation_and_permutation() {
    for seed in 0..25 {
        let n = 2 + seed as usize % 4;
        let f = random_partial(n, seed);
        let d = threshold_degree(&f).unwrap().degree;
        let mut rng = rng_from_seed(seed + 100);
        let mask = rng.gen_range(0u32..1 << n);
        assert_eq!(threshold_degree(&f.negate_inputs(mask)).unwrap().degree, d);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        assert_eq!(threshold_degree(&f.permute_inputs(&perm)).unwrap().degree, d);
    }
}

#[test]
fn sampler_matches_threshold_degree() {
    for seed in 0..25 {
        let f = random_partial(2 + seed as usize % 4, seed + 7);
        let t = threshold_degree(&f).unwrap();
        assert!(t.polynomial.sign_represents(&f));
        let s = upp_sampler(&t.polynomial).unwrap();
        assert!(s.computes_with_strict_bias(&f));
        assert!(s.max_queries() <= t.degree);
        if t.degree > 0 {
            let c = t.lower_certificate.unwrap();
            assert_eq!(c.degree, t.degree - 1);
            assert!(c.max_correlation <= 1e-9);
        }
    }
}
