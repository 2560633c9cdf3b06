//! Randomized algorithm from a sign representation: query the monomial `S`
//! with probability `|α_S| / Σ_T |α_T|` and output `sgn(α_S)·χ_S(x)`. Its
//! expectation is `P(x)/‖α‖₁`, which has the sign of `f(x)`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::function::{chi, PartialBooleanFunction};
use super::thrdeg::SignPolynomial;
use crate::error::{Error, Result};
use crate::oracle::{BitString, CountingOracle};
use crate::rng::TrialRng;

#[derive(Debug, Clone, PartialEq)]
pub struct Draw {
    pub monomial: u32,
    pub sign: i8,
    pub probability: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UppSampler {
    pub n: usize,
    pub draws: Vec<Draw>,
}

pub fn upp_sampler(p: &SignPolynomial) -> Result<UppSampler> {
    let norm = p.l1_norm();
    if norm.is_zero() {
        return Err(Error::InvalidWitness("zero polynomial".into()));
    }
    let draws = p
        .coeffs
        .iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|(s, a)| Draw {
            monomial: *s,
            sign: if a.is_positive() { 1 } else { -1 },
            probability: a.abs() / &norm,
        })
        .collect();
    Ok(UppSampler { n: p.n, draws })
}

impl UppSampler {
    /// Most coordinates any draw reads.
    pub fn max_queries(&self) -> usize {
        self.draws.iter().map(|d| d.monomial.count_ones() as usize).max().unwrap_or(0)
    }

    /// Exact `E[output]` on `x`.
    pub fn expectation(&self, x: u32) -> BigRational {
        self.draws.iter().fold(BigRational::zero(), |acc, d| {
            if d.sign * chi(d.monomial, x) == 1 {
                acc + &d.probability
            } else {
                acc - &d.probability
            }
        })
    }

    /// `sgn(E[output]) = f(x)` strictly on every domain point.
    pub fn computes_with_strict_bias(&self, f: &PartialBooleanFunction) -> bool {
        f.domain.iter().zip(&f.values).all(|(&x, &v)| {
            let e = self.expectation(x);
            if v == 1 {
                e.is_positive()
            } else {
                e.is_negative()
            }
        })
    }

    /// One run against `x` given as bits (`1` encodes `−1`).
    pub fn run(&self, oracle: &CountingOracle<BitString>, rng: &mut TrialRng) -> i8 {
        let mut u = rng.gen::<f64>();
        let draw = self
            .draws
            .iter()
            .find(|d| {
                let p = num_traits::ToPrimitive::to_f64(&d.probability).unwrap_or(0.0);
                if u < p {
                    true
                } else {
                    u -= p;
                    false
                }
            })
            .unwrap_or_else(|| self.draws.last().unwrap());
        let mut out = draw.sign;
        for t in 0..self.n {
            if draw.monomial >> t & 1 == 1 && oracle.read(t) == 1 {
                out = -out;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowerbound::thrdeg::threshold_degree;
    use crate::rng::rng_from_seed;
    use num_traits::One;

    #[test]
    fn dictator_sampler_is_deterministic() {
        let f = PartialBooleanFunction::dictator(4, 0);
        let s = upp_sampler(&threshold_degree(&f).unwrap().polynomial).unwrap();
        let o = CountingOracle::new(BitString(vec![1, 1, 1, 1]));
        let mut rng = rng_from_seed(0);
        for _ in 0..20 {
            assert_eq!(s.run(&o, &mut rng), -1);
        }
        assert_eq!(o.queries(), 20);
        assert_eq!(s.expectation(0b1111), -BigRational::one());
    }

    #[test]
    fn zero_polynomial_is_invalid() {
        let p = SignPolynomial { n: 2, degree: 0, coeffs: vec![] };
        assert!(upp_sampler(&p).is_err());
    }

    #[test]
    fn parity_three_bias_on_every_input() {
        let f = PartialBooleanFunction::parity(3);
        let t = threshold_degree(&f).unwrap();
        let s = upp_sampler(&t.polynomial).unwrap();
        assert!(s.computes_with_strict_bias(&f));
        assert!(s.max_queries() <= t.degree);
        let mut rng = rng_from_seed(1);
        for x in 0u32..8 {
            let bits: Vec<u8> = (0..3).map(|i| (x >> i & 1) as u8).collect();
            let o = CountingOracle::new(BitString(bits));
            let sum: i64 = (0..500).map(|_| s.run(&o, &mut rng) as i64).sum();
            assert_eq!(sum.signum(), f.values[x as usize] as i64);
            assert!(o.queries() <= 500 * 3);
        }
    }
}
