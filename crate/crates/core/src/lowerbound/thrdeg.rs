//! Threshold degree by linear programming.
//!
//! Degree `d` is feasible iff some `P = Σ_{|S|≤d} α_S χ_S` has
//! `f(x)·P(x) ≥ 1` on the domain. The LP minimises `Σ|α_S|`; its solution
//! is rounded, checked in exact rational arithmetic and rescaled so the
//! smallest margin is exactly 1. Infeasibility at `d` is certified by a
//! distribution on the domain under which `f` has zero correlation with
//! every monomial of degree at most `d`.

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::function::{chi, PartialBooleanFunction};
use crate::error::{Error, Result};

pub const MAX_VARIABLES: usize = 14;
/// Largest `n` at which infeasibility below the threshold degree is
/// certified by a dual distribution.
pub const CERTIFIED_MAX_VARIABLES: usize = 8;
pub const DUAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SignPolynomial {
    pub n: usize,
    pub degree: usize,
    /// Nonzero coefficients `(S, α_S)`.
    pub coeffs: Vec<(u32, BigRational)>,
}

impl SignPolynomial {
    pub fn evaluate(&self, x: u32) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, (s, a)| {
            if chi(*s, x) == 1 {
                acc + a
            } else {
                acc - a
            }
        })
    }

    pub fn l1_norm(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, (_, a)| acc + a.abs())
    }

    /// Smallest `f(x)·P(x)` over the domain.
    pub fn min_margin(&self, f: &PartialBooleanFunction) -> BigRational {
        f.domain
            .iter()
            .zip(&f.values)
            .map(|(&x, &v)| {
                let p = self.evaluate(x);
                if v == 1 {
                    p
                } else {
                    -p
                }
            })
            .min()
            .unwrap_or_else(BigRational::one)
    }

    /// `f(x)·P(x) ≥ 1` on every domain point, exactly.
    pub fn sign_represents(&self, f: &PartialBooleanFunction) -> bool {
        self.min_margin(f) >= BigRational::one()
    }
}

/// A distribution on the domain, aligned with `f.domain`, under which `f`
/// is uncorrelated with all monomials of degree at most `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    pub degree: usize,
    pub weights: Vec<f64>,
    /// Largest `|E_μ[f·χ_S]|` over those monomials.
    pub max_correlation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdDegree {
    pub degree: usize,
    pub polynomial: SignPolynomial,
    /// Certificate that degree `degree − 1` is infeasible, when `n` is
    /// small enough and `degree > 0`.
    pub lower_certificate: Option<DualCertificate>,
}

/// Masks of weight at most `d`, in increasing order.
pub fn monomials(n: usize, d: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize <= d).collect()
}

fn check_size(f: &PartialBooleanFunction) -> Result<()> {
    if f.n > MAX_VARIABLES {
        return Err(Error::Config(format!(
            "{} variables exceeds the LP limit of {MAX_VARIABLES}",
            f.n
        )));
    }
    if f.domain.is_empty() {
        return Err(Error::Config("empty domain".into()));
    }
    Ok(())
}

fn rational(v: f64) -> BigRational {
    // round to a 1e-9 grid so witnesses print compactly
    let scale = 1_000_000_000i64;
    BigRational::new(BigInt::from((v * scale as f64).round() as i64), BigInt::from(scale))
}

/// A degree-`d` sign representation with margin exactly 1, or `None` when
/// the LP is infeasible.
pub fn sign_representation(f: &PartialBooleanFunction, d: usize) -> Result<Option<SignPolynomial>> {
    check_size(f)?;
    let mons = monomials(f.n, d);
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = mons
        .iter()
        .map(|_| (lp.add_var(1.0, (0.0, f64::INFINITY)), lp.add_var(1.0, (0.0, f64::INFINITY))))
        .collect();
    for (&x, &v) in f.domain.iter().zip(&f.values) {
        let mut expr = Vec::with_capacity(2 * mons.len());
        for (&s, &(plus, minus)) in mons.iter().zip(&vars) {
            let c = (v * chi(s, x)) as f64;
            expr.push((plus, c));
            expr.push((minus, -c));
        }
        lp.add_constraint(expr.as_slice(), ComparisonOp::Ge, 1.0);
    }
    let sol = match lp.solve() {
        Ok(s) => s,
        Err(minilp::Error::Infeasible) => return Ok(None),
        Err(e) => return Err(Error::Solver(e.to_string())),
    };
    let coeffs: Vec<(u32, BigRational)> = mons
        .iter()
        .zip(&vars)
        .map(|(&s, &(p, m))| (s, rational(sol[p] - sol[m])))
        .filter(|(_, a)| !a.is_zero())
        .collect();
    let mut poly = SignPolynomial { n: f.n, degree: d, coeffs };
    let margin = poly.min_margin(f);
    if !margin.is_positive() {
        return Err(Error::Solver(format!(
            "LP reported degree {d} feasible but the rounded witness has margin {}",
            margin.to_f64().unwrap_or(f64::NAN)
        )));
    }
    for (_, a) in poly.coeffs.iter_mut() {
        *a = &*a / &margin;
    }
    debug_assert!(poly.sign_represents(f));
    Ok(Some(poly))
}

/// A distribution certifying that no polynomial of degree at most `d`
/// sign-represents `f`, or `None` when the LP finds none.
pub fn dual_certificate(f: &PartialBooleanFunction, d: usize) -> Result<Option<DualCertificate>> {
    check_size(f)?;
    let mons = monomials(f.n, d);
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let mu: Vec<_> = f.domain.iter().map(|_| lp.add_var(0.0, (0.0, 1.0))).collect();
    let total: Vec<_> = mu.iter().map(|&m| (m, 1.0)).collect();
    lp.add_constraint(total.as_slice(), ComparisonOp::Eq, 1.0);
    for &s in &mons {
        let expr: Vec<_> = f
            .domain
            .iter()
            .zip(&f.values)
            .zip(&mu)
            .map(|((&x, &v), &m)| (m, (v * chi(s, x)) as f64))
            .collect();
        lp.add_constraint(expr.as_slice(), ComparisonOp::Eq, 0.0);
    }
    let sol = match lp.solve() {
        Ok(s) => s,
        Err(minilp::Error::Infeasible) => return Ok(None),
        Err(e) => return Err(Error::Solver(e.to_string())),
    };
    let weights: Vec<f64> = mu.iter().map(|&m| sol[m].max(0.0)).collect();
    let cert = DualCertificate {
        degree: d,
        max_correlation: max_correlation(f, &weights, d),
        weights,
    };
    if (cert.weights.iter().sum::<f64>() - 1.0).abs() > DUAL_TOLERANCE || cert.max_correlation > DUAL_TOLERANCE {
        return Err(Error::Solver(format!(
            "dual witness fails a posteriori check (correlation {:.3e})",
            cert.max_correlation
        )));
    }
    Ok(Some(cert))
}

/// Largest `|Σ_x μ(x) f(x) χ_S(x)|` over `|S| ≤ d`.
pub fn max_correlation(f: &PartialBooleanFunction, weights: &[f64], d: usize) -> f64 {
    monomials(f.n, d)
        .iter()
        .map(|&s| {
            f.domain
                .iter()
                .zip(&f.values)
                .zip(weights)
                .map(|((&x, &v), &w)| w * (v * chi(s, x)) as f64)
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max)
}

/// Smallest feasible degree, scanning `d = 0, 1, …, n`.
pub fn threshold_degree(f: &PartialBooleanFunction) -> Result<ThresholdDegree> {
    check_size(f)?;
    for d in 0..=f.n {
        let Some(polynomial) = sign_representation(f, d)? else {
            continue;
        };
        let lower_certificate = if d > 0 && f.n <= CERTIFIED_MAX_VARIABLES {
            match dual_certificate(f, d - 1)? {
                Some(c) => Some(c),
                None => {
                    return Err(Error::Solver(format!(
                        "degree {} infeasible for the primal LP but no dual witness found",
                        d - 1
                    )))
                }
            }
        } else {
            None
        };
        return Ok(ThresholdDegree {
            degree: d,
            polynomial,
            lower_certificate,
        });
    }
    Err(Error::Solver(format!("no sign representation up to degree {}", f.n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_dictator() {
        let one = PartialBooleanFunction::total(3, |_| 1).unwrap();
        let t = threshold_degree(&one).unwrap();
        assert_eq!(t.degree, 0);
        assert!(t.lower_certificate.is_none());
        let dict = PartialBooleanFunction::dictator(3, 1);
        let t = threshold_degree(&dict).unwrap();
        assert_eq!(t.degree, 1);
        assert!(t.polynomial.sign_represents(&dict));
        assert_eq!(t.polynomial.coeffs, vec![(2, BigRational::one())]);
    }

    #[test]
    fn parity_needs_full_degree() {
        for n in 1..=4 {
            let f = PartialBooleanFunction::parity(n);
            let t = threshold_degree(&f).unwrap();
            assert_eq!(t.degree, n);
            let cert = t.lower_certificate.unwrap();
            assert_eq!(cert.degree, n - 1);
            // the uniform distribution already works for parity
            assert!(cert.max_correlation <= DUAL_TOLERANCE);
        }
    }

    #[test]
    fn majority_is_linear() {
        let f = PartialBooleanFunction::total(5, |x| if x.count_ones() < 3 { 1 } else { -1 }).unwrap();
        assert_eq!(threshold_degree(&f).unwrap().degree, 1);
    }

    #[test]
    fn oversized_input_is_refused() {
        let f = PartialBooleanFunction::new(15, vec![0], vec![1]).unwrap();
        assert!(matches!(threshold_degree(&f), Err(Error::Config(_))));
    }
}
