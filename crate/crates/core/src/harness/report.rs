//! CSV rows. Columns are fixed; floats print with six decimals so reruns
//! are byte-identical.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub id: String,
    pub protocol: String,
    pub n: usize,
    pub eps: f64,
    pub k: usize,
    pub trials: u64,
    pub policy: String,
    pub accept_rate: f64,
    pub reject_rate: f64,
    /// 95% Wilson interval for the acceptance rate.
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub mean_classical_queries: f64,
    pub max_classical_queries: u64,
    pub mean_modeled_queries: f64,
    pub max_modeled_queries: u64,
    pub proof_bits: u64,
    /// Acceptance of the proof the adversary chose.
    pub adversary_acceptance: Option<f64>,
    /// Whether that search was exhaustive (else a lower bound).
    pub adversary_exhaustive: Option<bool>,
    pub seed: u64,
    pub constants_fingerprint: String,
}

pub const CSV_HEADER: &str = "id,protocol,n,eps,k,trials,policy,accept_rate,reject_rate,wilson_low,wilson_high,\
mean_classical_queries,max_classical_queries,mean_modeled_queries,max_modeled_queries,proof_bits,\
adversary_acceptance,adversary_search,seed,constants_fingerprint";

impl ReportRow {
    /// Lower end of the Wilson interval for the rejection rate.
    pub fn reject_wilson_low(&self) -> f64 {
        1.0 - self.wilson_high
    }

    pub fn to_csv(&self) -> String {
        let adv = self
            .adversary_acceptance
            .map(|a| format!("{a:.6}"))
            .unwrap_or_default();
        let search = match self.adversary_exhaustive {
            Some(true) => "exhaustive",
            Some(false) => "lower-bound",
            None => "",
        };
        format!(
            "{},{},{},{:.6},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{},{:.6},{},{},{},{},{},{}",
            self.id,
            self.protocol,
            self.n,
            self.eps,
            self.k,
            self.trials,
            self.policy,
            self.accept_rate,
            self.reject_rate,
            self.wilson_low,
            self.wilson_high,
            self.mean_classical_queries,
            self.max_classical_queries,
            self.mean_modeled_queries,
            self.max_modeled_queries,
            self.proof_bits,
            adv,
            search,
            self.seed,
            self.constants_fingerprint
        )
    }
}

pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut s = String::new();
    writeln!(s, "{CSV_HEADER}").unwrap();
    for r in rows {
        writeln!(s, "{}", r.to_csv()).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_row_have_equal_width() {
        let row = ReportRow {
            id: "x".into(),
            protocol: "p".into(),
            n: 4,
            eps: 0.25,
            k: 2,
            trials: 10,
            policy: "honest".into(),
            accept_rate: 1.0,
            reject_rate: 0.0,
            wilson_low: 0.7,
            wilson_high: 1.0,
            mean_classical_queries: 2.0,
            max_classical_queries: 3,
            mean_modeled_queries: 5.0,
            max_modeled_queries: 8,
            proof_bits: 1,
            adversary_acceptance: None,
            adversary_exhaustive: None,
            seed: 1,
            constants_fingerprint: "ab".into(),
        };
        assert_eq!(row.to_csv().split(',').count(), CSV_HEADER.split(',').count());
        assert_eq!(row.reject_wilson_low(), 0.0);
    }
}
