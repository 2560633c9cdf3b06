//! Collision finding under a symmetric relation, simulated behaviourally.
//!
//! The map is scanned exhaustively and the modeled quantum cost
//! `⌈c_col · |T|^{2/3} · (log₂|Y|)^e⌉` map evaluations is charged instead.
//! When a related pair exists the scan always finds it, which meets the
//! "found with probability at least 2/3" contract.

use std::collections::HashMap;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::rng::TrialRng;

pub struct CollisionInstance<T, Y, F, R>
where
    F: Fn(&T) -> Y,
    R: Fn(&Y, &Y) -> bool,
{
    pub domain: Vec<T>,
    pub map: F,
    /// Must be symmetric.
    pub relation: R,
    /// `|Y|`, the size of the map's codomain.
    pub codomain_size: u64,
    /// Oracle queries per map evaluation.
    pub cost_per_evaluation: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollisionOutcome {
    /// Indices into the domain of a related pair.
    pub pair: Option<(usize, usize)>,
    /// Modeled oracle queries.
    pub modeled_cost: u64,
}

/// Modeled number of map evaluations.
pub fn collision_evaluations(domain_size: usize, codomain_size: u64, c_col: f64, exp: u32) -> u64 {
    if domain_size == 0 {
        return 0;
    }
    let log_y = (codomain_size.max(2) as f64).log2();
    (c_col * (domain_size as f64).powf(2.0 / 3.0) * log_y.powi(exp as i32)).ceil() as u64
}

pub fn find_collision<T, Y, F, R>(
    inst: &CollisionInstance<T, Y, F, R>,
    c_col: f64,
    exp: u32,
    rng: &mut TrialRng,
) -> CollisionOutcome
where
    Y: Eq + Hash + Clone,
    F: Fn(&T) -> Y,
    R: Fn(&Y, &Y) -> bool,
{
    let modeled_cost = collision_evaluations(inst.domain.len(), inst.codomain_size, c_col, exp)
        * inst.cost_per_evaluation;

    let mut classes: HashMap<Y, Vec<usize>> = HashMap::new();
    let mut order: Vec<Y> = Vec::new();
    for (i, t) in inst.domain.iter().enumerate() {
        let y = (inst.map)(t);
        classes
            .entry(y.clone())
            .or_insert_with(|| {
                order.push(y);
                Vec::new()
            })
            .push(i);
    }

    let mut related: Vec<(usize, usize)> = Vec::new();
    for a in 0..order.len() {
        for b in a..order.len() {
            let same = a == b;
            if same && classes[&order[a]].len() < 2 {
                continue;
            }
            if (inst.relation)(&order[a], &order[b]) {
                related.push((a, b));
            }
        }
    }

    let pair = related.choose(rng).map(|&(a, b)| {
        let ca = &classes[&order[a]];
        let cb = &classes[&order[b]];
        if a == b {
            let i = rng.gen_range(0..ca.len());
            let mut j = rng.gen_range(0..ca.len() - 1);
            if j >= i {
                j += 1;
            }
            (ca[i], ca[j])
        } else {
            (*ca.choose(rng).unwrap(), *cb.choose(rng).unwrap())
        }
    });

    CollisionOutcome { pair, modeled_cost }
}
