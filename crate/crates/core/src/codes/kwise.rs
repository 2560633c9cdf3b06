//! k-wise independence of explicit sets and zero-bias witnesses.

use crate::error::{Error, Result};

/// Index sets of size `k` in `[n]`, as masks.
fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Compresses the bits of `x` selected by `mask` into the low bits.
fn restrict(x: u32, mask: u32) -> usize {
    let mut out = 0usize;
    let mut j = 0;
    let mut m = mask;
    while m != 0 {
        let t = m.trailing_zeros();
        out |= ((x >> t & 1) as usize) << j;
        j += 1;
        m &= m - 1;
    }
    out
}

/// True iff for every `I` with `|I| = k` and every `y ∈ {0,1}^k`, exactly
/// `|S|/2^k` elements of `S` restrict to `y` on `I`.
pub fn kwise_check(set: &[u32], n: usize, k: usize) -> bool {
    if set.is_empty() || k > n {
        return false;
    }
    if set.len() % (1 << k) != 0 {
        return false;
    }
    let target = set.len() >> k;
    subsets_of_size(n, k).into_iter().all(|mask| {
        let mut counts = vec![0usize; 1 << k];
        for &x in set {
            counts[restrict(x, mask)] += 1;
        }
        counts.iter().all(|&c| c == target)
    })
}

/// Two disjoint sets; `D` mixes their uniform distributions half and half,
/// and `f` is `+1` on `pi` and `−1` on `companion`.
#[derive(Debug, Clone)]
pub struct DualWitness {
    pub n: usize,
    pub pi: Vec<u32>,
    pub companion: Vec<u32>,
}

fn chi(x: u32, s: u32) -> i64 {
    if (x & s).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

impl DualWitness {
    /// The first monomial of degree at most `max_degree` whose signed
    /// expectation under `D` is nonzero, if any.
    pub fn first_biased_monomial(&self, max_degree: usize) -> Result<Option<u32>> {
        let pi: std::collections::HashSet<u32> = self.pi.iter().copied().collect();
        if self.companion.iter().any(|c| pi.contains(c)) {
            return Err(Error::InvalidWitness("the two sets intersect".into()));
        }
        if self.pi.is_empty() || self.companion.is_empty() {
            return Err(Error::InvalidWitness("both sets must be nonempty".into()));
        }
        let (np, nc) = (self.pi.len() as i128, self.companion.len() as i128);
        for s in 0u32..1 << self.n {
            if s.count_ones() as usize > max_degree {
                continue;
            }
            // E[f·χ_S] = 0  ⇔  Σ_Π χ_S · |C| = Σ_C χ_S · |Π|
            let sp: i128 = self.pi.iter().map(|&x| chi(x, s) as i128).sum();
            let sc: i128 = self.companion.iter().map(|&x| chi(x, s) as i128).sum();
            if sp * nc != sc * np {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }
}

/// True iff every monomial of degree at most `max_degree` has exactly zero
/// signed expectation under `D`.
pub fn zero_bias_witness(witness: &DualWitness, max_degree: usize) -> Result<bool> {
    Ok(witness.first_biased_monomial(max_degree)?.is_none())
}
