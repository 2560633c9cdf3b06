//! Builds the instance an [`ExperimentConfig`] describes.

use std::sync::Arc;

use rand::Rng;

use super::config::ExperimentConfig;
use super::instance::{BipartiteInstance, BooleanityInstance, DecomposeInstance, DecomposeMode, Instance, PoMapInstance};
use crate::bipartite::{gen_bipartite_expander, gen_far_nonbipartite, walk_length, BipartiteVerifier};
use crate::codes::f3::F3;
use crate::codes::hadamard::{distance_to_code, hadamard_encode};
use crate::error::{Error, Result};
use crate::oracle::{BitString, FieldString};
use crate::properties::bp::{bp_decomposition, pair_equality_bp, pair_equality_input, RobpPoMap};
use crate::properties::eulerian::eulerian_decomposition;
use crate::properties::kmono::{far_kmonotone_input, kmonotone_decomposition, MonotoneLineTester};
use crate::properties::parity::parity_decomposition;
use crate::protocol::{Decomposition, PoMap, TrivialTester};
use crate::rng::{derive_seed, rng_from_seed, stream_id};

pub const PROTOCOLS: [&str; 7] = ["parity", "kmono", "bp", "robp", "eulerian", "booleanity", "bipartite"];

/// Monte Carlo runs behind each booleanity acceptance estimate.
const BOOLEANITY_ESTIMATE_RUNS: u64 = 400;

/// A built instance and the exact relative distance of its input, when known.
pub struct Built {
    pub instance: Box<dyn Instance>,
    pub distance: Option<f64>,
}

fn want_member(cfg: &ExperimentConfig) -> Result<bool> {
    match cfg.input.as_str() {
        "member" => Ok(true),
        "far" => Ok(false),
        other => Err(Error::Config(format!(
            "input {other:?} not available for {}; use member or far",
            cfg.protocol
        ))),
    }
}

fn decompose(
    cfg: &ExperimentConfig,
    dec: Box<dyn Decomposition>,
    mode: DecomposeMode,
    x: Vec<u8>,
    mutation_width: usize,
    decoys: Vec<Vec<u8>>,
) -> Built {
    let sub: Box<dyn crate::protocol::SubVerifier> = if dec.name() == "kmono" {
        Box::new(MonotoneLineTester {
            c_mono: cfg.constants.c_mono,
        })
    } else {
        Box::new(TrivialTester)
    };
    let distance = Some(dec.distance(&x));
    Built {
        instance: Box::new(DecomposeInstance {
            dec,
            sub,
            mode,
            payload: Arc::new(BitString(x)),
            eps: cfg.eps,
            constants: cfg.constants.clone(),
            honest_subproof: None,
            mutation_width,
            decoys,
        }),
        distance,
    }
}

/// Builds the instance for `cfg` at size `n`. `seed` drives input
/// generation only.
pub fn build_instance(cfg: &ExperimentConfig, n: usize, seed: u64) -> Result<Built> {
    cfg.validate()?;
    let k = cfg.k_for(n);
    if k == 0 {
        return Err(Error::Config("k must be positive".into()));
    }
    let mut rng = rng_from_seed(derive_seed(seed, stream_id("input"), n as u64));
    match cfg.protocol.as_str() {
        "parity" => {
            let mut x = vec![0u8; n];
            if !want_member(cfg)? {
                x[0] = 1;
            }
            let dec = parity_decomposition(n, k);
            let decoys = dec.honest_spec(&vec![0; n]).into_iter().collect();
            // single flips break the claimed total parity; flip pairs
            Ok(decompose(cfg, Box::new(dec), DecomposeMode::Exact, x, 2, decoys))
        }
        "kmono" => {
            let x = if want_member(cfg)? {
                (0..n).map(|i| ((i * k / n.max(1)) % 2) as u8).collect()
            } else {
                far_kmonotone_input(n, k, cfg.eps, cfg.stripe)
                    .ok_or_else(|| Error::Config(format!("no striped input on [{n}] is {}-far from {k}-monotone", cfg.eps)))?
                    .0
            };
            let dec = kmonotone_decomposition(n, k);
            let decoys = kmono_decoys(&dec, &x);
            Ok(decompose(cfg, Box::new(dec), DecomposeMode::Plain, x, 1, decoys))
        }
        "bp" | "robp" => {
            if n % 2 != 0 {
                return Err(Error::Config("pair equality needs even n".into()));
            }
            let unequal = if want_member(cfg)? {
                0
            } else {
                ((cfg.eps * n as f64) - 1e-9).ceil() as usize
            };
            if unequal > n / 2 {
                return Err(Error::Config(format!("eps {} unreachable at n = {n}", cfg.eps)));
            }
            let x = pair_equality_input(n, unequal, &mut rng);
            // nearest member: copy each pair's first bit
            let repaired: Vec<u8> = (0..n).map(|i| x[i & !1]).collect();
            if cfg.protocol == "bp" {
                let dec = bp_decomposition(pair_equality_bp(n), k);
                let decoys = dec.honest_spec(&repaired).into_iter().collect();
                return Ok(decompose(cfg, Box::new(dec), DecomposeMode::Plain, x, 1, decoys));
            }
            let map = RobpPoMap::new(pair_equality_bp(n), k)?;
            let mut decoys: Vec<Vec<u8>> = map.honest_proof(&repaired).into_iter().collect();
            decoys.push(map.dec.encode_states(&vec![0; k]));
            let distance = Some(map.dec.bp.distance(&x));
            Ok(Built {
                instance: Box::new(PoMapInstance {
                    map: Box::new(map),
                    payload: Arc::new(BitString(x)),
                    eps: cfg.eps,
                    k,
                    constants: cfg.constants.clone(),
                    decoys,
                }),
                distance,
            })
        }
        "eulerian" => {
            if n < 4 || n % 2 != 0 {
                return Err(Error::Config("eulerian needs even n ≥ 4 vertices".into()));
            }
            let right = n - 2;
            let mut x = Vec::with_capacity(2 * right);
            for j in 0..right {
                x.extend(if j % 2 == 0 { [1, 0] } else { [0, 1] });
            }
            let balanced = x.clone();
            if !want_member(cfg)? {
                // each doubly-oriented vertex costs one flip
                let bad = ((2.0 * cfg.eps * right as f64) - 1e-9).ceil() as usize;
                if bad > right {
                    return Err(Error::Config(format!("eps {} unreachable at n = {n}", cfg.eps)));
                }
                for j in 0..bad {
                    x[2 * j] = 1;
                    x[2 * j + 1] = 1;
                }
            }
            let dec = eulerian_decomposition(n, k);
            let decoys = dec.honest_spec(&balanced).into_iter().collect();
            Ok(decompose(cfg, Box::new(dec), DecomposeMode::Plain, x, 1, decoys))
        }
        "booleanity" => booleanity(cfg, k, &mut rng),
        "bipartite" => {
            let len = walk_length(n, cfg.constants.c_mix);
            let gseed = derive_seed(seed, stream_id("graph"), n as u64);
            let cert = if want_member(cfg)? {
                gen_bipartite_expander(n, cfg.d, len, gseed)?
            } else {
                gen_far_nonbipartite(n, cfg.d, cfg.eps, len, gseed)?
            };
            let distance = cert.certificate.distance;
            let verifier = BipartiteVerifier::new(Arc::new(cert.graph), k, cfg.eps, &cfg.constants)?;
            Ok(Built {
                instance: Box::new(BipartiteInstance { verifier }),
                distance,
            })
        }
        other => Err(Error::Config(format!(
            "unknown protocol {other:?}; available: {}",
            PROTOCOLS.join(", ")
        ))),
    }
}

/// Specifications an adversary would try on `x`: the first `k-1` critical
/// points of `x`, and `k-1` evenly spaced points.
fn kmono_decoys(dec: &crate::properties::kmono::KMonoDecomposition, x: &[u8]) -> Vec<Vec<u8>> {
    let n = x.len();
    let k = dec.k();
    let mut critical = crate::properties::kmono::KMonoDecomposition::critical_points(x);
    critical.truncate(k - 1);
    let even: Vec<usize> = (1..k).map(|j| j * n / k).filter(|&p| p > 0 && p < n).collect();
    [critical, even]
        .into_iter()
        .filter_map(|points| dec.spec_for(x, points))
        .map(|spec| dec.encode(&spec))
        .filter(|y| dec.blocks(y).is_some())
        .collect()
}

/// `k` is the message length; `member` encodes a message containing a 2,
/// `boolean` a 0/1 message, `far` is a corrupted codeword at distance at
/// least `eps` from the code.
fn booleanity(cfg: &ExperimentConfig, k: usize, rng: &mut crate::rng::TrialRng) -> Result<Built> {
    if k > 8 {
        return Err(Error::Config("booleanity supports message length k ≤ 8".into()));
    }
    let boolean_message = |rng: &mut crate::rng::TrialRng| -> Vec<F3> {
        (0..k).map(|_| F3::new(rng.gen_range(0..2))).collect()
    };
    let (word, message, distance) = match cfg.input.as_str() {
        "member" => {
            let mut z = boolean_message(rng);
            z[rng.gen_range(0..k)] = F3::TWO;
            (hadamard_encode(&z), Some(z), Some(0.0))
        }
        "boolean" => {
            let z = boolean_message(rng);
            (hadamard_encode(&z), Some(z), Some(0.0))
        }
        "far" => {
            let z = boolean_message(rng);
            let mut w = hadamard_encode(&z);
            let len = w.len();
            // below half the code distance the nearest codeword stays z
            let changes = ((cfg.eps * len as f64) - 1e-9).ceil() as usize;
            if changes * 3 >= len {
                return Err(Error::Config(format!("eps {} too large for unique decoding", cfg.eps)));
            }
            for i in rand::seq::index::sample(rng, len, changes) {
                w[i] = w[i] + F3::new(rng.gen_range(1..3));
            }
            let dist = distance_to_code(&w, k);
            (w, None, Some(dist))
        }
        other => {
            return Err(Error::Config(format!(
                "input {other:?} not available for booleanity; use member, boolean or far"
            )))
        }
    };
    Ok(Built {
        instance: Box::new(BooleanityInstance {
            word: Arc::new(FieldString(word)),
            k,
            eps: cfg.eps,
            constants: cfg.constants.clone(),
            message,
            estimate_runs: BOOLEANITY_ESTIMATE_RUNS,
        }),
        distance,
    })
}
