//! `Φ_{f,g} = N^{−3/2} Σ_{x,y} f(x)(−1)^{x·y} g(y)` for `±1` tables of size
//! `N`.

use crate::error::{Error, Result};

fn check(f: &[i8], g: &[i8]) -> Result<usize> {
    let n = f.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Config(format!("table size {n} is not a power of two")));
    }
    if g.len() != n {
        return Err(Error::Config(format!("tables differ in size: {n} and {}", g.len())));
    }
    Ok(n)
}

fn scale(sum: i64, n: usize) -> f64 {
    sum as f64 / (n as f64).powf(1.5)
}

/// Double loop over all `(x, y)`.
pub fn forrelation_phi(f: &[i8], g: &[i8]) -> Result<f64> {
    let n = check(f, g)?;
    let mut sum = 0i64;
    for (x, &fx) in f.iter().enumerate() {
        for (y, &gy) in g.iter().enumerate() {
            let s = if (x & y).count_ones() % 2 == 0 { 1 } else { -1 };
            sum += (fx * gy) as i64 * s;
        }
    }
    Ok(scale(sum, n))
}

/// In-place unnormalised Walsh–Hadamard transform.
pub fn walsh_hadamard(v: &mut [i64]) {
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (a, b) = block.split_at_mut(h);
            for (p, q) in a.iter_mut().zip(b.iter_mut()) {
                let (s, t) = (*p + *q, *p - *q);
                *p = s;
                *q = t;
            }
        }
        h *= 2;
    }
}

/// `Σ_y g(y)·ĝf(y)` with `ĝf = H f` by the fast transform.
pub fn forrelation_phi_fast(f: &[i8], g: &[i8]) -> Result<f64> {
    let n = check(f, g)?;
    let mut hf: Vec<i64> = f.iter().map(|&v| v as i64).collect();
    walsh_hadamard(&mut hf);
    let sum = hf.iter().zip(g).map(|(a, &b)| a * b as i64).sum();
    Ok(scale(sum, n))
}
