//! Partial Boolean functions on `{1,−1}^n`. A point is a mask whose bit
//! `t` is set iff `x_t = −1`.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialBooleanFunction {
    pub n: usize,
    pub domain: Vec<u32>,
    /// `±1`, aligned with `domain`.
    pub values: Vec<i8>,
}

/// `χ_S(x) = ∏_{i∈S} x_i`.
pub fn chi(s: u32, x: u32) -> i8 {
    if (s & x).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

impl PartialBooleanFunction {
    pub fn new(n: usize, domain: Vec<u32>, values: Vec<i8>) -> Result<Self> {
        if n > 20 {
            return Err(Error::Config(format!("{n} variables is beyond the explicit-domain range")));
        }
        if domain.len() != values.len() {
            return Err(Error::Config("domain and values differ in length".into()));
        }
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Config("values must be ±1".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &x in &domain {
            if x >> n != 0 {
                return Err(Error::Config(format!("point {x:#b} has more than {n} coordinates")));
            }
            if !seen.insert(x) {
                return Err(Error::Config(format!("point {x:#b} listed twice")));
            }
        }
        Ok(Self { n, domain, values })
    }

    /// Total function from its table over all `2^n` points.
    pub fn total(n: usize, f: impl Fn(u32) -> i8) -> Result<Self> {
        let domain: Vec<u32> = (0u32..1 << n).collect();
        let values = domain.iter().map(|&x| f(x)).collect();
        Self::new(n, domain, values)
    }

    pub fn parity(n: usize) -> Self {
        Self::total(n, |x| chi(u32::MAX, x)).unwrap()
    }

    pub fn dictator(n: usize, i: usize) -> Self {
        Self::total(n, |x| chi(1 << i, x)).unwrap()
    }

    /// `+1` on `pi`, `−1` on `companion`.
    pub fn from_sets(n: usize, pi: &[u32], companion: &[u32]) -> Result<Self> {
        let domain = pi.iter().chain(companion).copied().collect();
        let values = pi.iter().map(|_| 1).chain(companion.iter().map(|_| -1)).collect();
        Self::new(n, domain, values)
    }

    pub fn is_total(&self) -> bool {
        self.domain.len() == 1 << self.n
    }

    /// Composes with `x ↦ x ⊕ mask` (negating the masked variables).
    pub fn negate_inputs(&self, mask: u32) -> Self {
        Self {
            n: self.n,
            domain: self.domain.iter().map(|&x| x ^ mask).collect(),
            values: self.values.clone(),
        }
    }

    /// Moves coordinate `t` to `perm[t]`.
    pub fn permute_inputs(&self, perm: &[usize]) -> Self {
        let map = |x: u32| {
            (0..self.n)
                .filter(|&t| x >> t & 1 == 1)
                .fold(0u32, |acc, t| acc | 1 << perm[t])
        };
        Self {
            n: self.n,
            domain: self.domain.iter().map(|&x| map(x)).collect(),
            values: self.values.clone(),
        }
    }

    /// Truth table, one `1`, `-1` or `*` (outside the domain) per line, in
    /// mask order.
    pub fn to_text(&self) -> String {
        let mut table = vec![None; 1 << self.n];
        for (&x, &v) in self.domain.iter().zip(&self.values) {
            table[x as usize] = Some(v);
        }
        let mut s = String::new();
        for v in table {
            match v {
                Some(v) => writeln!(s, "{v}").unwrap(),
                None => writeln!(s, "*").unwrap(),
            }
        }
        s
    }

    /// Parses a truth table of `2^n` lines of `1`/`-1`, optionally
    /// restricted by a mask file of `2^n` lines of `0`/`1`. A `*` entry in
    /// the table also leaves the point out of the domain.
    pub fn from_text(table: &str, mask: Option<&str>) -> Result<Self> {
        let entries: Vec<&str> = table.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        let len = entries.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Parse(format!("truth table has {len} entries, not a power of two")));
        }
        let n = len.trailing_zeros() as usize;
        let keep: Vec<bool> = match mask {
            None => vec![true; len],
            Some(m) => {
                let bits: Vec<&str> = m.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
                if bits.len() != len {
                    return Err(Error::Parse(format!("mask has {} entries, table has {len}", bits.len())));
                }
                bits.iter()
                    .map(|b| match *b {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        other => Err(Error::Parse(format!("mask entry {other:?} is not 0/1"))),
                    })
                    .collect::<Result<_>>()?
            }
        };
        let (mut domain, mut values) = (Vec::new(), Vec::new());
        for (x, e) in entries.iter().enumerate() {
            let v = match *e {
                "1" | "+1" => Some(1),
                "-1" => Some(-1),
                "*" => None,
                other => return Err(Error::Parse(format!("line {}: {other:?} is not ±1", x + 1))),
            };
            if let (Some(v), true) = (v, keep[x]) {
                domain.push(x as u32);
                values.push(v);
            }
        }
        Self::new(n, domain, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_with_mask() {
        let f = PartialBooleanFunction::parity(3);
        assert_eq!(PartialBooleanFunction::from_text(&f.to_text(), None).unwrap(), f);
        let mask = "1\n0\n0\n1\n1\n0\n0\n1\n";
        let g = PartialBooleanFunction::from_text(&f.to_text(), Some(mask)).unwrap();
        assert_eq!(g.domain, vec![0, 3, 4, 7]);
        assert_eq!(PartialBooleanFunction::from_text(&g.to_text(), None).unwrap(), g);
        assert!(PartialBooleanFunction::from_text("1\n1\n1\n", None).is_err());
    }

    #[test]
    fn duplicate_points_rejected() {
        assert!(PartialBooleanFunction::new(2, vec![1, 1], vec![1, -1]).is_err());
        assert!(PartialBooleanFunction::new(2, vec![4], vec![1]).is_err());
    }

    #[test]
    fn negation_and_permutation_preserve_values() {
        let f = PartialBooleanFunction::dictator(3, 0);
        let g = f.permute_inputs(&[2, 0, 1]);
        for (&x, &v) in g.domain.iter().zip(&g.values) {
            assert_eq!(v, chi(1 << 2, x));
        }
        let h = f.negate_inputs(1);
        for (&x, &v) in h.domain.iter().zip(&h.values) {
            assert_eq!(v, -chi(1, x));
        }
    }
}
