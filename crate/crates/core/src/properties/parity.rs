//! Even parity, partitioned into contiguous blocks.

use std::any::Any;
use std::sync::Arc;

use crate::protocol::{Block, Decomposition, SubProperty};

/// Blocks whose XOR equals a fixed bit.
#[derive(Debug, Clone, Copy)]
pub struct BlockParity(pub u8);

impl SubProperty for BlockParity {
    fn contains(&self, block: &[u8]) -> bool {
        xor(block) == self.0
    }

    fn distance(&self, block: &[u8]) -> f64 {
        if self.contains(block) {
            0.0
        } else if block.is_empty() {
            1.0
        } else {
            1.0 / block.len() as f64
        }
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

pub fn xor(bits: &[u8]) -> u8 {
    bits.iter().fold(0, |a, &b| a ^ (b & 1))
}

/// Start offsets of a balanced split of `n` into `k` contiguous parts.
pub fn balanced_bounds(n: usize, k: usize) -> Vec<usize> {
    (0..=k).map(|i| i * n / k).collect()
}

/// `S` = even-weight `k`-bit strings, `Λ^{(i)}` = blocks of parity `y_i`.
#[derive(Debug, Clone)]
pub struct ParityDecomposition {
    n: usize,
    k: usize,
    bounds: Vec<usize>,
}

/// `k` is clamped to `[1, n]`; blocks differ in length by at most one.
pub fn parity_decomposition(n: usize, k: usize) -> ParityDecomposition {
    let k = k.clamp(1, n.max(1));
    ParityDecomposition {
        n,
        k,
        bounds: balanced_bounds(n, k),
    }
}

impl ParityDecomposition {
    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.bounds[i]..self.bounds[i + 1]
    }
}

impl Decomposition for ParityDecomposition {
    fn name(&self) -> &str {
        "parity"
    }

    fn n(&self) -> usize {
        self.n
    }

    fn k(&self) -> usize {
        self.k
    }

    fn spec_bits(&self) -> usize {
        self.k
    }

    fn c_dec(&self) -> f64 {
        1.0
    }

    fn blocks(&self, y: &[u8]) -> Option<Vec<Block>> {
        if y.len() != self.k || xor(y) != 0 || y.iter().any(|&b| b > 1) {
            return None;
        }
        Some(
            (0..self.k)
                .map(|i| Block {
                    coords: self.block_range(i).collect(),
                    property: Arc::new(BlockParity(y[i])),
                })
                .collect(),
        )
    }

    fn honest_spec(&self, x: &[u8]) -> Option<Vec<u8>> {
        if !self.contains(x) {
            return None;
        }
        Some((0..self.k).map(|i| xor(&x[self.block_range(i)])).collect())
    }

    fn contains(&self, x: &[u8]) -> bool {
        xor(x) == 0
    }

    fn distance(&self, x: &[u8]) -> f64 {
        if self.contains(x) {
            0.0
        } else {
            1.0 / self.n as f64
        }
    }
}
