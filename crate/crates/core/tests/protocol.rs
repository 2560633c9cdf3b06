use std::sync::Arc;

use proxlab::oracle::{BitString, CountingOracle};
use proxlab::properties::bp::{bp_decomposition, pair_equality_bp, pair_equality_input, RobpPoMap, SegmentStepChecker};
use proxlab::properties::eulerian::eulerian_decomposition;
use proxlab::properties::kmono::{distance_to_kmonotone, kmonotone_decomposition, MonotoneLineTester};
use proxlab::properties::parity::parity_decomposition;
use proxlab::protocol::verify::{prepare_decompose, prepare_decompose_po, prepare_exact};
use proxlab::protocol::{bits_of, decompose_verify, exact_decide, pomap_speedup, Decomposition, PoMap, TrivialTester};
use proxlab::rng::{derive_seed, rng_from_seed};
use proxlab::{Constants, Verdict};
use rand::Rng;

fn oracle(x: &[u8]) -> CountingOracle<BitString> {
    CountingOracle::new(BitString(x.to_vec()))
}

#[test]
fn spec_outside_s_rejects_without_queries() {
    let c = Constants::default();
    let d = parity_decomposition(9, 3);
    let o = oracle(&[0; 9]);
    let t = decompose_verify(&d, &TrivialTester, &o, 0.25, &[1, 0, 0], &c, 7).unwrap();
    assert_eq!(t.verdict, Verdict::Reject);
    assert_eq!((t.classical_queries, t.modeled_quantum_queries), (0, 0));
    // wrong length
    let t = decompose_verify(&d, &TrivialTester, &o, 0.25, &[0, 0], &c, 7).unwrap();
    assert_eq!(t.verdict, Verdict::Reject);
    assert_eq!(o.queries(), 0);
}

#[test]
fn parity_exact_decide_completeness_and_soundness() {
    let c = Constants::default();
    let d = parity_decomposition(9, 3);
    let o = oracle(&[0; 9]);
    for s in 0..2000 {
        let t = exact_decide(&d, &o, &[0, 0, 0], &c, s).unwrap();
        assert_eq!(t.verdict, Verdict::Accept);
    }
    let mut x = vec![0u8; 9];
    x[0] = 1;
    let payload = Arc::new(BitString(x));
    for y in d.all_specs() {
        let p = prepare_exact(&d, Arc::clone(&payload), &y, &c).unwrap();
        assert!(p.acceptance_probability() <= 1.0 / 3.0);
        let rejects = (0..10_000u64)
            .filter(|&s| p.run(derive_seed(11, 0, s)).verdict == Verdict::Reject)
            .count();
        assert!(rejects as f64 / 1e4 >= 2.0 / 3.0, "y={y:?}: {rejects}");
    }
}

#[test]
fn honest_proofs_always_accept() {
    let c = Constants::default();
    let mut rng = rng_from_seed(5);
    let kd = kmonotone_decomposition(64, 3);
    let tester = MonotoneLineTester { c_mono: c.c_mono };
    let f: Vec<u8> = (0..64).map(|i| ((i / 20) % 2) as u8).collect();
    let y = kd.honest_spec(&f).unwrap();
    let p = prepare_decompose(&kd, &tester, Arc::new(BitString(f)), 0.125, &y, &c).unwrap();
    assert_eq!(p.acceptance_probability(), 1.0);
    for s in 0..10_000 {
        assert!(p.run(s).verdict.is_accept());
    }

    let ed = eulerian_decomposition(14, 3);
    let mut x = Vec::new();
    for j in 0..12 {
        x.extend(if j % 2 == 0 { [1, 0] } else { [0, 1] });
    }
    let y = ed.honest_spec(&x).unwrap();
    let p = prepare_decompose(&ed, &TrivialTester, Arc::new(BitString(x)), 0.125, &y, &c).unwrap();
    assert_eq!(p.acceptance_probability(), 1.0);

    let bd = bp_decomposition(pair_equality_bp(16), 4);
    let x = pair_equality_input(16, 0, &mut rng);
    let y = bd.honest_spec(&x).unwrap();
    let p = prepare_decompose(&bd, &TrivialTester, Arc::new(BitString(x)), 0.25, &y, &c).unwrap();
    assert_eq!(p.acceptance_probability(), 1.0);
    for s in 0..10_000 {
        assert!(p.run(s).verdict.is_accept());
    }
}

#[test]
fn kmono_far_inputs_rejected_against_every_spec() {
    let c = Constants::default();
    let n = 16;
    let k = 2;
    let d = kmonotone_decomposition(n, k);
    let tester = MonotoneLineTester { c_mono: c.c_mono };
    let specs = d.all_specs();
    let mut checked = 0;
    for v in (0u64..1 << n).step_by(97) {
        let f = bits_of(v, n);
        if distance_to_kmonotone(&f, k) < 0.125 {
            continue;
        }
        checked += 1;
        let payload = Arc::new(BitString(f));
        let worst = specs
            .iter()
            .map(|y| {
                prepare_decompose(&d, &tester, Arc::clone(&payload), 0.125, y, &c)
                    .unwrap()
                    .acceptance_probability()
            })
            .fold(0.0, f64::max);
        assert!(worst <= 1.0 / 3.0, "v={v}: {worst}");
    }
    assert!(checked > 50);
}

#[test]
fn classical_reads_stay_within_prepared_bound() {
    let c = Constants::default();
    let d = kmonotone_decomposition(256, 4);
    let tester = MonotoneLineTester { c_mono: c.c_mono };
    let mut rng = rng_from_seed(1);
    for _ in 0..20 {
        let f: Vec<u8> = (0..256).map(|_| rng.gen_range(0..2)).collect();
        let y: Vec<u8> = (0..d.spec_bits()).map(|_| rng.gen_range(0..2)).collect();
        let p = prepare_decompose(&d, &tester, Arc::new(BitString(f)), 1.0 / 16.0, &y, &c).unwrap();
        for s in 0..50 {
            let t = p.run(s);
            assert!(t.classical_queries <= p.max_classical_queries());
            assert!(t.modeled_quantum_queries <= p.max_modeled_queries());
            assert!(t.proof_bits_consumed <= d.spec_bits() as u64);
        }
    }
}

#[test]
fn same_seed_same_trace() {
    let c = Constants::default();
    let d = kmonotone_decomposition(128, 2);
    let tester = MonotoneLineTester { c_mono: c.c_mono };
    let f: Vec<u8> = (0..128).map(|i| (i % 3 == 0) as u8).collect();
    let y = vec![0; d.spec_bits()];
    let a = decompose_verify(&d, &tester, &oracle(&f), 0.1, &y, &c, 99).unwrap();
    let b = decompose_verify(&d, &tester, &oracle(&f), 0.1, &y, &c, 99).unwrap();
    assert_eq!(a, b);
}

#[test]
fn robp_pomap_speedup_soundness_and_accounting() {
    let c = Constants::default();
    let (n, k) = (256, 16);
    let map = RobpPoMap::new(pair_equality_bp(n), k).unwrap();
    let eps = 0.125;
    let v = pomap_speedup(&map, eps, &c).unwrap();
    let mut rng = rng_from_seed(3);
    let far = pair_equality_input(n, n / 8, &mut rng);
    assert_eq!(map.dec.bp.distance(&far), eps);
    // every boundary claim with accepting end state
    let w = map.dec.state_bits();
    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let proof: Vec<u8> = (0..k * w).map(|_| rng.gen_range(0..2)).collect();
        worst = worst.max(v.acceptance_probability(&far, &proof));
    }
    let all_ok = map.dec.encode_states(&vec![0; k]);
    worst = worst.max(v.acceptance_probability(&far, &all_ok));
    assert!(worst <= 1.0 / 3.0, "{worst}");
    let member = pair_equality_input(n, 0, &mut rng);
    let proof = map.honest_proof(&member).unwrap();
    let o = oracle(&member);
    for s in 0..1000 {
        let t = v.verify(&o, &proof, s);
        assert!(t.verdict.is_accept());
        assert!(t.modeled_quantum_queries as f64 <= c.c_amp * (n / k) as f64 / eps.sqrt());
    }
}

#[test]
fn po_decomposition_rejects_at_least_as_often_at_tiny_n() {
    let c = Constants::default();
    let n = 8;
    let d = bp_decomposition(pair_equality_bp(n), 2);
    let checker = SegmentStepChecker { state_bits: d.state_bits() };
    let eps = 0.125;
    let specs = d.all_specs();
    for v in 0u64..1 << n {
        let x = bits_of(v, n);
        let payload = Arc::new(BitString(x.clone()));
        for y in &specs {
            let dv = prepare_decompose(&d, &TrivialTester, Arc::clone(&payload), eps, y, &c)
                .unwrap()
                .acceptance_probability();
            let blocks = d.blocks(y).unwrap();
            let p = proxlab::protocol::SubVerifier::proof_bits(&checker, &blocks);
            for sub in 0u64..1 << (p * blocks.len()) {
                let mut proof = y.clone();
                proof.extend(bits_of(sub, p * blocks.len()));
                let po = prepare_decompose_po(&d, &checker, Arc::clone(&payload), eps, &proof, &c)
                    .unwrap()
                    .acceptance_probability();
                if d.distance(&x) >= eps {
                    assert!(po <= 1.0 / 3.0 && dv <= 1.0 / 3.0, "x={x:?} y={y:?}");
                }
                if dv == 0.0 {
                    // a spec the plain verifier always rejects is never
                    // rescued by a sub-proof
                    assert!(po <= 1.0 / 3.0 || d.distance(&x) < eps);
                }
            }
        }
    }
}
