//! Hadamard code over F_3: the message `z ∈ F_3^k` is encoded as
//! `(⟨z, i⟩)_{i ∈ F_3^k}`, with coordinates indexed as in
//! [`super::f3::vec_to_index`].

use rand::Rng;

use super::f3::{index_add, index_to_vec, F3};
use crate::oracle::{CountingOracle, FieldString};
use crate::rng::TrialRng;

pub fn blocklength(k: usize) -> usize {
    3usize.pow(k as u32)
}

pub fn hadamard_encode(z: &[F3]) -> Vec<F3> {
    let k = z.len();
    assert!(k <= 10, "message length above 10 is out of range");
    (0..blocklength(k))
        .map(|i| {
            index_to_vec(i, k)
                .iter()
                .zip(z)
                .fold(F3::ZERO, |acc, (a, b)| acc + *a * *b)
        })
        .collect()
}

/// Index of the unit vector `e_j`.
pub fn unit_index(j: usize) -> usize {
    3usize.pow(j as u32)
}

/// Relative Hamming distance from `w` to the nearest codeword, by
/// enumerating all `3^k` messages.
pub fn distance_to_code(w: &[F3], k: usize) -> f64 {
    let n = blocklength(k);
    assert_eq!(w.len(), n);
    (0..n)
        .map(|m| {
            let z = index_to_vec(m, k);
            hadamard_encode(&z)
                .iter()
                .zip(w)
                .filter(|(a, b)| a != b)
                .count()
        })
        .min()
        .unwrap() as f64
        / n as f64
}

/// BLR repetitions for proximity `eps`: `⌈c_blr/ε⌉`.
pub fn blr_repetitions(c_blr: f64, eps: f64) -> u64 {
    (c_blr / eps - 1e-9).ceil().max(1.0) as u64
}

/// Repeats `w(i) + w(j) = w(i+j)` for uniform `i, j`; rejects on the first
/// failure. Three reads per repetition.
pub fn local_test_linear(oracle: &CountingOracle<FieldString>, k: usize, reps: u64, rng: &mut TrialRng) -> bool {
    let n = blocklength(k);
    for _ in 0..reps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let (a, b, c) = (oracle.read(i), oracle.read(j), oracle.read(index_add(i, j, k)));
        if a + b != c {
            return false;
        }
    }
    true
}

/// Majority of `w(i + e_j) − w(i)` over `reps` uniform `i`; `None` (⊥)
/// unless one value occurs in more than half the repetitions.
pub fn local_decode(
    oracle: &CountingOracle<FieldString>,
    k: usize,
    j: usize,
    reps: u64,
    rng: &mut TrialRng,
) -> Option<F3> {
    let n = blocklength(k);
    let ej = unit_index(j);
    let mut votes = [0u64; 3];
    for _ in 0..reps {
        let i = rng.gen_range(0..n);
        let d = oracle.read(index_add(i, ej, k)) - oracle.read(i);
        votes[d.value() as usize] += 1;
    }
    (0..3)
        .find(|&v| 2 * votes[v] > reps)
        .map(|v| F3::new(v as u8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn small_encodings() {
        assert!(hadamard_encode(&[F3::ZERO; 3]).iter().all(|&s| s == F3::ZERO));
        assert_eq!(hadamard_encode(&[F3::TWO]), vec![F3::ZERO, F3::TWO, F3::ONE]);
    }

    #[test]
    fn encoding_is_linear() {
        for k in 1..=4 {
            let n = blocklength(k);
            for a in 0..n {
                for b in 0..n {
                    let za = index_to_vec(a, k);
                    let zb = index_to_vec(b, k);
                    let sum = index_to_vec(index_add(a, b, k), k);
                    let ca = hadamard_encode(&za);
                    let cb = hadamard_encode(&zb);
                    let cs = hadamard_encode(&sum);
                    assert!((0..n).all(|i| ca[i] + cb[i] == cs[i]));
                }
            }
        }
    }

    #[test]
    fn codewords_pass_and_count_three_reads() {
        let w = hadamard_encode(&[F3::ONE, F3::TWO, F3::ZERO, F3::ONE]);
        let o = CountingOracle::new(FieldString(w));
        let mut rng = rng_from_seed(0);
        for _ in 0..100 {
            assert!(local_test_linear(&o, 4, 10, &mut rng));
        }
        assert_eq!(o.queries(), 100 * 10 * 3 * 2);
    }

    #[test]
    fn clean_decoding_is_exact() {
        let z = [F3::TWO, F3::ONE];
        let o = CountingOracle::new(FieldString(hadamard_encode(&z)));
        let mut rng = rng_from_seed(1);
        for _ in 0..100 {
            assert_eq!(local_decode(&o, 2, 0, 9, &mut rng), Some(F3::TWO));
            assert_eq!(local_decode(&o, 2, 1, 9, &mut rng), Some(F3::ONE));
        }
    }

    #[test]
    fn distance_of_shifted_codeword() {
        let z = [F3::ONE, F3::ZERO, F3::TWO];
        let mut w = hadamard_encode(&z);
        for s in w.iter_mut().take(3) {
            *s = *s + F3::ONE;
        }
        assert_eq!(distance_to_code(&w, 3), 3.0 / 27.0);
    }
}
