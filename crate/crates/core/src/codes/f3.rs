//! Arithmetic in F_3.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct F3(u8);

impl F3 {
    pub const ZERO: F3 = F3(0);
    pub const ONE: F3 = F3(1);
    pub const TWO: F3 = F3(2);

    pub fn new(v: u8) -> Self {
        F3(v % 3)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn all() -> [F3; 3] {
        [F3(0), F3(1), F3(2)]
    }
}

impl Add for F3 {
    type Output = F3;
    fn add(self, o: F3) -> F3 {
        F3((self.0 + o.0) % 3)
    }
}

impl Sub for F3 {
    type Output = F3;
    fn sub(self, o: F3) -> F3 {
        F3((self.0 + 3 - o.0) % 3)
    }
}

impl Neg for F3 {
    type Output = F3;
    fn neg(self) -> F3 {
        F3((3 - self.0) % 3)
    }
}

impl Mul for F3 {
    type Output = F3;
    fn mul(self, o: F3) -> F3 {
        F3((self.0 * o.0) % 3)
    }
}

impl fmt::Display for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of a vector in `F_3^k`, little-endian base 3.
pub fn vec_to_index(v: &[F3]) -> usize {
    v.iter().rev().fold(0, |acc, d| acc * 3 + d.0 as usize)
}

pub fn index_to_vec(mut i: usize, k: usize) -> Vec<F3> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(F3((i % 3) as u8));
        i /= 3;
    }
    out
}

/// `a + b` on indices of `F_3^k`.
pub fn index_add(a: usize, b: usize, k: usize) -> usize {
    let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
    for _ in 0..k {
        out += ((a % 3 + b % 3) % 3) * place;
        a /= 3;
        b /= 3;
        place *= 3;
    }
    out
}
