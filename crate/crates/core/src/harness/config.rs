//! Experiment configuration: line-oriented `key = value` text, every key
//! overridable.

use super::estimate::{AdversaryMode, ProofPolicy};
use crate::config::Constants;
use crate::error::{Error, Result};

/// How `k` is chosen from `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KRule {
    Fixed(usize),
    /// `k = ⌈n^a⌉`.
    Power(f64),
}

impl KRule {
    pub fn resolve(&self, n: usize) -> usize {
        match *self {
            KRule::Fixed(k) => k,
            KRule::Power(a) => ((n as f64).powf(a) - 1e-9).ceil().max(1.0) as usize,
        }
    }

    fn parse(v: &str) -> Result<Self> {
        if let Some(e) = v.strip_prefix("n^") {
            let a = match e.split_once('/') {
                Some((p, q)) => parse_f64("k", p)? / parse_f64("k", q)?,
                None => parse_f64("k", e)?,
            };
            return Ok(KRule::Power(a));
        }
        Ok(KRule::Fixed(parse_usize("k", v)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub id: String,
    pub protocol: String,
    pub n: usize,
    pub k: KRule,
    pub eps: f64,
    /// Degree bound for graph protocols.
    pub d: usize,
    /// `member` or `far` (`boolean` also for booleanity).
    pub input: String,
    pub trials: u64,
    pub seed: Option<u64>,
    pub constants: Constants,
    pub policy: String,
    pub adversary: String,
    pub proof: Option<Vec<u8>>,
    pub restarts: usize,
    pub budget: usize,
    /// Stripe width of far k-monotone inputs.
    pub stripe: usize,
    /// Swept parameter (`n` or `eps`) and its values.
    pub sweep: Option<String>,
    pub values: Vec<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            id: "run".into(),
            protocol: "parity".into(),
            n: 64,
            k: KRule::Fixed(4),
            eps: 0.125,
            d: 3,
            input: "far".into(),
            trials: 1000,
            seed: None,
            constants: Constants::default(),
            policy: "adversarial".into(),
            adversary: "auto".into(),
            proof: None,
            restarts: 32,
            budget: 10_000,
            stripe: 1,
            sweep: None,
            values: Vec::new(),
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: not a number: {v}")))
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: not a nonnegative integer: {v}")))
}

impl ExperimentConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "id" => self.id = value.to_string(),
            "protocol" => self.protocol = value.to_string(),
            "n" => self.n = parse_usize(&key, value)?,
            "k" => self.k = KRule::parse(value)?,
            "eps" | "epsilon" => self.eps = parse_f64(&key, value)?,
            "d" => self.d = parse_usize(&key, value)?,
            "input" => self.input = value.to_string(),
            "trials" => self.trials = parse_usize(&key, value)? as u64,
            "seed" => {
                self.seed = Some(
                    value
                        .parse()
                        .map_err(|_| Error::Config(format!("seed: not a u64: {value}")))?,
                )
            }
            "policy" => self.policy = value.to_string(),
            "adversary" => self.adversary = value.to_string(),
            "proof" => {
                let bits = value
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(Error::Config(format!("proof: {c:?} is not a bit"))),
                    })
                    .collect::<Result<Vec<u8>>>()?;
                self.proof = Some(bits);
            }
            "restarts" => self.restarts = parse_usize(&key, value)?,
            "budget" => self.budget = parse_usize(&key, value)?,
            "stripe" => self.stripe = parse_usize(&key, value)?,
            "sweep" => self.sweep = Some(value.to_string()),
            "values" => {
                self.values = value
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_f64("values", s))
                    .collect::<Result<_>>()?
            }
            _ => {
                if !self.constants.set(&key, value)? {
                    return Err(Error::Config(format!("unknown key {key:?}")));
                }
            }
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", lineno + 1)))?;
            cfg.set(k, v)
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if !(self.eps > 0.0 && self.eps <= 1.0) {
            return Err(Error::Config(format!("eps must lie in (0, 1], got {}", self.eps)));
        }
        if self.stripe == 0 {
            return Err(Error::Config("stripe must be positive".into()));
        }
        self.proof_policy()?;
        Ok(())
    }

    pub fn adversary_mode(&self) -> Result<AdversaryMode> {
        match self.adversary.as_str() {
            "exhaustive" => Ok(AdversaryMode::Exhaustive),
            "hillclimb" => Ok(AdversaryMode::Hillclimb {
                restarts: self.restarts,
                budget: self.budget,
            }),
            "auto" => Ok(AdversaryMode::Auto {
                restarts: self.restarts,
                budget: self.budget,
            }),
            "honest-only" | "honest_only" => Ok(AdversaryMode::HonestOnly),
            other => Err(Error::Config(format!(
                "unknown adversary {other:?}; use exhaustive, hillclimb, auto or honest-only"
            ))),
        }
    }

    pub fn proof_policy(&self) -> Result<ProofPolicy> {
        match self.policy.as_str() {
            "honest" => Ok(ProofPolicy::Honest),
            "fixed" => Ok(ProofPolicy::Fixed(
                self.proof
                    .clone()
                    .ok_or_else(|| Error::Config("policy fixed needs a proof = <bits> entry".into()))?,
            )),
            "adversarial" => Ok(ProofPolicy::Adversarial(self.adversary_mode()?)),
            other => Err(Error::Config(format!(
                "unknown policy {other:?}; use honest, fixed or adversarial"
            ))),
        }
    }

    pub fn k_for(&self, n: usize) -> usize {
        self.k.resolve(n)
    }
}
