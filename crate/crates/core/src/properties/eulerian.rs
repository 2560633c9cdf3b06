//! Eulerian orientations of `K_{2,n-2}`.
//!
//! Vertices are `u_1`, `u_2` and right vertices `r_1..r_{n-2}`. The input
//! has two bits per right vertex `r_j`: `x[2j]` is 1 when the edge is
//! oriented `u_1 → r_j`, and `x[2j+1]` is 1 when it is oriented `u_2 → r_j`.
//! A right vertex is *type A* (`u_1 → r → u_2`, bits `10`) or *type B*
//! (`u_2 → r → u_1`, bits `01`); the orientation is Eulerian iff every
//! right vertex is A or B and exactly `(n-2)/2` are A.

use std::any::Any;
use std::sync::Arc;

use super::parity::balanced_bounds;
use crate::oracle::ceil_log2;
use crate::protocol::{bits_of, value_of, Block, Decomposition, SubProperty};

/// Flips needed to make one right vertex type A and type B.
fn vertex_costs(a: u8, b: u8) -> (usize, usize) {
    (((a != 1) as usize) + ((b != 0) as usize), ((a != 0) as usize) + ((b != 1) as usize))
}

/// Minimum flips so that exactly `count_a` of the vertices in `bits` are
/// type A and the rest type B; `None` if `count_a` exceeds the vertices.
pub fn flips_to_counts(bits: &[u8], count_a: usize) -> Option<usize> {
    let verts = bits.len() / 2;
    if count_a > verts {
        return None;
    }
    let mut base = 0usize;
    let mut diffs: Vec<isize> = (0..verts)
        .map(|j| {
            let (ca, cb) = vertex_costs(bits[2 * j], bits[2 * j + 1]);
            base += cb;
            ca as isize - cb as isize
        })
        .collect();
    diffs.sort_unstable();
    Some((base as isize + diffs[..count_a].iter().sum::<isize>()) as usize)
}

pub fn is_eulerian(x: &[u8]) -> bool {
    let verts = x.len() / 2;
    let mut a = 0;
    for j in 0..verts {
        match (x[2 * j], x[2 * j + 1]) {
            (1, 0) => a += 1,
            (0, 1) => {}
            _ => return false,
        }
    }
    2 * a == verts
}

/// Per-vertex degree check, written independently of the A/B encoding.
pub fn degree_check(x: &[u8]) -> bool {
    let verts = x.len() / 2;
    let mut u1_in = 0;
    for j in 0..verts {
        let r_in = x[2 * j] as usize + x[2 * j + 1] as usize;
        if r_in != 1 {
            return false;
        }
        u1_in += (x[2 * j] == 0) as usize;
    }
    2 * u1_in == verts
}

/// Block of right vertices with a prescribed type-A count.
#[derive(Debug, Clone, Copy)]
pub struct BlockCount(pub usize);

impl SubProperty for BlockCount {
    fn contains(&self, block: &[u8]) -> bool {
        flips_to_counts(block, self.0) == Some(0)
    }

    fn distance(&self, block: &[u8]) -> f64 {
        match flips_to_counts(block, self.0) {
            Some(f) if !block.is_empty() => f as f64 / block.len() as f64,
            Some(_) => 0.0,
            None => 1.0,
        }
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

#[derive(Debug, Clone)]
pub struct EulerianDecomposition {
    n: usize,
    k: usize,
    /// Balanced split of the right vertices.
    bounds: Vec<usize>,
    count_bits: usize,
}

/// `n` vertices in total, `k` blocks of right vertices.
pub fn eulerian_decomposition(n: usize, k: usize) -> EulerianDecomposition {
    assert!(n >= 4 && n % 2 == 0, "n must be even and at least 4");
    let right = n - 2;
    let k = k.clamp(1, right);
    let bounds = balanced_bounds(right, k);
    let largest = bounds.windows(2).map(|w| w[1] - w[0]).max().unwrap();
    EulerianDecomposition {
        n,
        k,
        bounds,
        count_bits: ceil_log2(largest as u64 + 1).max(1) as usize,
    }
}

impl EulerianDecomposition {
    pub fn right_vertices(&self) -> usize {
        self.n - 2
    }

    fn block_size(&self, i: usize) -> usize {
        self.bounds[i + 1] - self.bounds[i]
    }

    pub fn encode_counts(&self, counts: &[usize]) -> Vec<u8> {
        counts
            .iter()
            .flat_map(|&c| bits_of(c as u64, self.count_bits))
            .collect()
    }

    pub fn decode_counts(&self, y: &[u8]) -> Option<Vec<usize>> {
        if y.len() != self.spec_bits() || y.iter().any(|&b| b > 1) {
            return None;
        }
        let counts: Vec<usize> = y
            .chunks(self.count_bits)
            .map(|c| value_of(c) as usize)
            .collect();
        if (0..self.k).any(|i| counts[i] > self.block_size(i)) {
            return None;
        }
        if 2 * counts.iter().sum::<usize>() != self.right_vertices() {
            return None;
        }
        Some(counts)
    }
}

impl Decomposition for EulerianDecomposition {
    fn name(&self) -> &str {
        "eulerian"
    }

    fn n(&self) -> usize {
        2 * self.right_vertices()
    }

    fn k(&self) -> usize {
        self.k
    }

    fn spec_bits(&self) -> usize {
        self.k * self.count_bits
    }

    fn c_dec(&self) -> f64 {
        1.0
    }

    fn blocks(&self, y: &[u8]) -> Option<Vec<Block>> {
        let counts = self.decode_counts(y)?;
        Some(
            (0..self.k)
                .map(|i| Block {
                    coords: (2 * self.bounds[i]..2 * self.bounds[i + 1]).collect(),
                    property: Arc::new(BlockCount(counts[i])),
                })
                .collect(),
        )
    }

    fn honest_spec(&self, x: &[u8]) -> Option<Vec<u8>> {
        if !is_eulerian(x) {
            return None;
        }
        let counts: Vec<usize> = (0..self.k)
            .map(|i| (self.bounds[i]..self.bounds[i + 1]).filter(|&j| x[2 * j] == 1).count())
            .collect();
        Some(self.encode_counts(&counts))
    }

    fn contains(&self, x: &[u8]) -> bool {
        is_eulerian(x)
    }

    fn distance(&self, x: &[u8]) -> f64 {
        flips_to_counts(x, self.right_vertices() / 2).unwrap() as f64 / x.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_vertex_example() {
        // r1: A, r2: B, r3: A, r4: B
        let x = [1, 0, 0, 1, 1, 0, 0, 1];
        assert!(is_eulerian(&x) && degree_check(&x));
        let d = eulerian_decomposition(6, 2);
        let y = d.honest_spec(&x).unwrap();
        assert_eq!(d.decode_counts(&y).unwrap(), vec![1, 1]);
        for b in d.blocks(&y).unwrap() {
            assert!(b.property.contains(&b.extract(&x)));
        }
    }

    #[test]
    fn all_out_of_u1_violates_every_spec() {
        let d = eulerian_decomposition(8, 2);
        let x: Vec<u8> = (0..12).map(|i| (i % 2 == 0) as u8).collect();
        assert!(!degree_check(&x));
        for y in d.all_specs() {
            let blocks = d.blocks(&y).unwrap();
            assert!(blocks.iter().any(|b| !b.property.contains(&b.extract(&x))));
        }
    }

    #[test]
    fn exhaustive_membership_eight() {
        let d = eulerian_decomposition(8, 2);
        let specs = d.all_specs();
        for v in 0u64..1 << 12 {
            let x = bits_of(v, 12);
            let via = specs.iter().any(|y| {
                d.blocks(y)
                    .unwrap()
                    .iter()
                    .all(|b| b.property.contains(&b.extract(&x)))
            });
            assert_eq!(via, degree_check(&x));
            assert_eq!(is_eulerian(&x), degree_check(&x));
        }
    }

    #[test]
    fn distance_matches_brute_force() {
        let d = eulerian_decomposition(6, 2);
        let members: Vec<Vec<u8>> = (0u64..256)
            .map(|v| bits_of(v, 8))
            .filter(|x| degree_check(x))
            .collect();
        for v in 0u64..256 {
            let x = bits_of(v, 8);
            let best = members
                .iter()
                .map(|m| m.iter().zip(&x).filter(|(a, b)| a != b).count())
                .min()
                .unwrap();
            assert_eq!(d.distance(&x), best as f64 / 8.0);
        }
    }
}
