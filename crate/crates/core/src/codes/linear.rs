//! Binary linear codes of blocklength at most 32, words as bit masks
//! (bit `t` is coordinate `t`).

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryLinearCode {
    pub n: usize,
    /// Generator rows, linearly independent.
    pub rows: Vec<u32>,
}

/// Reduced row echelon basis of the span of `vectors`.
fn echelon(vectors: &[u32]) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &b in &basis {
            let lead = 31 - b.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let lead = 31 - v.leading_zeros();
            for b in basis.iter_mut() {
                if *b >> lead & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

pub fn rank(vectors: &[u32]) -> usize {
    echelon(vectors).len()
}

pub fn weight(v: u32) -> usize {
    v.count_ones() as usize
}

impl BinaryLinearCode {
    pub fn new(n: usize, rows: Vec<u32>) -> Result<Self> {
        if n == 0 || n > 32 {
            return Err(Error::Config(format!("blocklength {n} outside 1..=32")));
        }
        let mask = mask(n);
        if rows.iter().any(|&r| r & !mask != 0) {
            return Err(Error::Config("generator row longer than blocklength".into()));
        }
        if rank(&rows) != rows.len() {
            return Err(Error::Config("generator rows are linearly dependent".into()));
        }
        Ok(Self { n, rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn even_weight(n: usize) -> Self {
        let rows = (1..n).map(|i| 1u32 | (1 << i)).collect();
        Self::new(n, rows).unwrap()
    }

    pub fn full_space(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| 1u32 << i).collect()).unwrap()
    }

    pub fn encode(&self, message: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| message >> i & 1 == 1)
            .fold(0, |acc, (_, &r)| acc ^ r)
    }

    pub fn codewords(&self) -> Vec<u32> {
        (0u32..1 << self.dim()).map(|m| self.encode(m)).collect()
    }

    /// Basis of `C^⊥ = {v : ⟨v, g⟩ = 0 for every row g}`.
    pub fn dual_basis(&self) -> Vec<u32> {
        let ech = echelon(&self.rows);
        let pivots: Vec<u32> = ech.iter().map(|b| 31 - b.leading_zeros()).collect();
        let mut out = Vec::new();
        for free in 0..self.n as u32 {
            if pivots.contains(&free) {
                continue;
            }
            // set the free coordinate, then fix each pivot coordinate
            let mut v = 1u32 << free;
            for (b, &p) in ech.iter().zip(&pivots) {
                if b >> free & 1 == 1 {
                    v |= 1 << p;
                }
            }
            out.push(v);
        }
        out
    }

    /// Minimum weight of a nonzero dual codeword; `n + 1` when the dual is
    /// trivial.
    pub fn dual_distance(&self) -> usize {
        let basis = self.dual_basis();
        if basis.is_empty() {
            return self.n + 1;
        }
        let dual = BinaryLinearCode {
            n: self.n,
            rows: basis,
        };
        dual.codewords()
            .into_iter()
            .filter(|&v| v != 0)
            .map(weight)
            .min()
            .unwrap()
    }

    /// True when every codeword is at Hamming distance more than `εn` from
    /// every element of `set`.
    /// Every codeword is at relative distance at least `eps` from `set`.
    pub fn is_far_from_set(&self, set: &[u32], eps: f64) -> bool {
        let limit = eps * self.n as f64 - 1e-9;
        self.codewords()
            .iter()
            .all(|&c| set.iter().all(|&s| weight(c ^ s) as f64 >= limit))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for &r in &self.rows {
            let syms: Vec<String> = (0..self.n).map(|t| (r >> t & 1).to_string()).collect();
            writeln!(s, "{}", syms.join(" ")).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syms: Vec<&str> = line.split_whitespace().collect();
            if *n.get_or_insert(syms.len()) != syms.len() {
                return Err(Error::Parse(format!("line {}: ragged generator row", lineno + 1)));
            }
            let mut r = 0u32;
            for (t, s) in syms.iter().enumerate() {
                match *s {
                    "0" => {}
                    "1" => r |= 1 << t,
                    other => {
                        return Err(Error::Parse(format!(
                            "line {}: symbol {other:?} is not binary",
                            lineno + 1
                        )))
                    }
                }
            }
            rows.push(r);
        }
        Self::new(n.ok_or_else(|| Error::Parse("empty generator matrix".into()))?, rows)
    }
}

fn mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Uniform full-rank `dim × n` generator matrix.
pub fn random_linear_code(n: usize, dim: usize, seed: u64) -> Result<BinaryLinearCode> {
    if dim > n {
        return Err(Error::Config(format!("dimension {dim} exceeds blocklength {n}")));
    }
    if n == 0 || n > 32 {
        return Err(Error::Config(format!("blocklength {n} outside 1..=32")));
    }
    let mut rng = rng_from_seed(seed);
    loop {
        let rows: Vec<u32> = (0..dim).map(|_| rng.gen::<u32>() & mask(n)).collect();
        if rank(&rows) == dim {
            return BinaryLinearCode::new(n, rows);
        }
    }
}

/// Binary entropy `H(α) = −α log α − (1−α) log(1−α)`, base 2.
pub fn binary_entropy(a: f64) -> f64 {
    if a <= 0.0 || a >= 1.0 {
        return 0.0;
    }
    -a * a.log2() - (1.0 - a) * (1.0 - a).log2()
}

/// `|S| < 2^{(1/4 − H(ε))n}`.
pub fn set_size_admissible(set_size: usize, n: usize, eps: f64) -> bool {
    (set_size as f64) < 2f64.powf((0.25 - binary_entropy(eps)) * n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_weight_four() {
        let c = BinaryLinearCode::even_weight(4);
        assert_eq!(c.dual_basis(), vec![0b1111]);
        assert_eq!(c.dual_distance(), 4);
    }

    #[test]
    fn full_space_convention() {
        for n in 1..=8 {
            assert_eq!(BinaryLinearCode::full_space(n).dual_distance(), n + 1);
        }
    }

    #[test]
    fn dual_is_orthogonal_and_complementary() {
        for seed in 0..40 {
            let n = 4 + (seed as usize % 9);
            let dim = 1 + seed as usize % n;
            let c = random_linear_code(n, dim, seed).unwrap();
            let d = c.dual_basis();
            assert_eq!(d.len() + dim, n);
            assert_eq!(rank(&d), d.len());
            for &g in &c.rows {
                for &h in &d {
                    assert_eq!(weight(g & h) % 2, 0);
                }
            }
        }
    }

    #[test]
    fn dual_distance_matches_enumeration() {
        for seed in 0..20 {
            let c = random_linear_code(10, 6, seed).unwrap();
            let words = c.codewords();
            let brute = (1u32..1 << 10)
                .filter(|&v| words.iter().all(|&w| weight(v & w) % 2 == 0))
                .map(weight)
                .min()
                .unwrap_or(11);
            assert_eq!(c.dual_distance(), brute);
        }
    }

    #[test]
    fn text_round_trip() {
        let c = random_linear_code(12, 5, 3).unwrap();
        assert_eq!(BinaryLinearCode::from_text(&c.to_text()).unwrap(), c);
        assert!(BinaryLinearCode::from_text("1 0\n1 2\n").is_err());
        assert!(random_linear_code(4, 5, 0).is_err());
    }

    #[test]
    fn far_from_set_is_inclusive() {
        let c = BinaryLinearCode::even_weight(4);
        // 0b0001 is at distance 1 from every even-weight word
        assert!(c.is_far_from_set(&[0b0001], 0.25));
        assert!(!c.is_far_from_set(&[0b0001], 0.3));
        assert!(!c.is_far_from_set(&[0b0011], 0.1));
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5), 1.0);
        assert!((binary_entropy(0.05) - 0.286_396_957).abs() < 1e-8);
    }
}
