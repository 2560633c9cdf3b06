//! Hidden constants of the asymptotic statements, made explicit.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Constants {
    /// Bound on base invocations of an amplified routine: `≤ c_amp/√γ`.
    pub c_amp: f64,
    /// Precision-sampling rounds multiplier.
    pub c_ps: f64,
    /// Sample-count multiplier of the line monotonicity tester.
    pub c_mono: f64,
    /// Repetition multiplier of the linearity test.
    pub c_blr: f64,
    /// Walk-seed multiplier for the bipartiteness verifier.
    pub c_t: f64,
    /// Gamma-floor multiplier for the bipartiteness verifier.
    pub c_gamma: f64,
    /// Collision-finding cost multiplier.
    pub c_col: f64,
    /// Walk length multiplier: `ℓ = ⌈c_mix · log₂ n⌉`.
    pub c_mix: f64,
    /// Repetitions of the doubling amplification schedule.
    pub amp_repeats: u32,
    /// Polylog exponent in the collision-finding cost.
    pub col_polylog_exp: u32,
    /// Repetitions of the local decoder inside the Booleanity MAP.
    pub decode_reps: u32,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            c_amp: 24.0,
            c_ps: 4.0,
            c_mono: 8.0,
            c_blr: 6.0,
            c_t: 8.0,
            c_gamma: 0.125,
            c_col: 1.0,
            c_mix: 10.0,
            amp_repeats: 3,
            col_polylog_exp: 3,
            decode_reps: 9,
        }
    }
}

impl Constants {
    pub fn validate(&self) -> Result<()> {
        let reals = [
            ("c_amp", self.c_amp),
            ("c_ps", self.c_ps),
            ("c_mono", self.c_mono),
            ("c_blr", self.c_blr),
            ("c_t", self.c_t),
            ("c_gamma", self.c_gamma),
            ("c_col", self.c_col),
            ("c_mix", self.c_mix),
        ];
        for (name, v) in reals {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.amp_repeats == 0 || self.decode_reps == 0 {
            return Err(Error::Config("repetition counts must be positive".into()));
        }
        Ok(())
    }

    /// Sets a constant by its config key. Returns `false` for unknown keys.
    pub fn set(&mut self, key: &str, value: &str) -> Result<bool> {
        let parse_f = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::Config(format!("{key}: not a number: {v}")))
        };
        let parse_u = |v: &str| {
            v.parse::<u32>()
                .map_err(|_| Error::Config(format!("{key}: not an integer: {v}")))
        };
        match key {
            "c_amp" => self.c_amp = parse_f(value)?,
            "c_ps" => self.c_ps = parse_f(value)?,
            "c_mono" => self.c_mono = parse_f(value)?,
            "c_blr" => self.c_blr = parse_f(value)?,
            "c_t" => self.c_t = parse_f(value)?,
            "c_gamma" => self.c_gamma = parse_f(value)?,
            "c_col" => self.c_col = parse_f(value)?,
            "c_mix" => self.c_mix = parse_f(value)?,
            "amp_repeats" => self.amp_repeats = parse_u(value)?,
            "col_polylog_exp" => self.col_polylog_exp = parse_u(value)?,
            "decode_reps" => self.decode_reps = parse_u(value)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn canonical_string(&self) -> String {
        format!(
            "c_amp={};c_ps={};c_mono={};c_blr={};c_t={};c_gamma={};c_col={};c_mix={};amp_repeats={};col_polylog_exp={};decode_reps={}",
            self.c_amp,
            self.c_ps,
            self.c_mono,
            self.c_blr,
            self.c_t,
            self.c_gamma,
            self.c_col,
            self.c_mix,
            self.amp_repeats,
            self.col_polylog_exp,
            self.decode_reps
        )
    }

    /// First 16 hex digits of SHA-256 over [`Constants::canonical_string`].
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.canonical_string().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fingerprint_tracks_every_constant() {
        let base = Constants::default();
        let keys = [
            "c_amp", "c_ps", "c_mono", "c_blr", "c_t", "c_gamma", "c_col", "c_mix",
            "amp_repeats", "col_polylog_exp", "decode_reps",
        ];
        for key in keys {
            let mut c = base.clone();
            assert!(c.set(key, "5").unwrap());
            assert_ne!(c.fingerprint(), base.fingerprint(), "{key}");
        }
        assert_eq!(base.fingerprint(), Constants::default().fingerprint());
    }

    #[test]
    fn rejects_nonpositive() {
        let mut c = Constants::default();
        c.set("c_ps", "0").unwrap();
        assert!(c.validate().is_err());
        assert!(c.set("c_ps", "x").is_err());
        assert!(!c.set("nope", "1").unwrap());
    }
}
