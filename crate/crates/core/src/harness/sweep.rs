//! Query-complexity sweeps over `n` or `eps`.

use super::build::build_instance;
use super::config::ExperimentConfig;
use super::estimate::estimate;
use super::report::{to_csv, ReportRow};
use super::stats::log_log_slope;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    /// `n` or `1/eps`.
    pub against: String,
    pub metric: &'static str,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<ReportRow>,
    pub slopes: Vec<SlopeFit>,
}

impl SweepResult {
    /// CSV followed by one `# slope` comment line per fit.
    pub fn to_csv(&self) -> String {
        let mut s = to_csv(&self.rows);
        for f in &self.slopes {
            s.push_str(&format!("# slope {} vs {} = {:.6}\n", f.metric, f.against, f.slope));
        }
        s
    }

    pub fn slope(&self, metric: &str) -> Option<f64> {
        self.slopes.iter().find(|f| f.metric == metric).map(|f| f.slope)
    }
}

/// Runs `cfg` once per value of its sweep parameter. Every grid point
/// uses the same master seed.
pub fn query_sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    let param = cfg.sweep.as_deref().unwrap_or("n");
    if cfg.values.is_empty() {
        return Err(Error::Config("sweep needs a nonempty values list".into()));
    }
    let seed = cfg
        .seed
        .ok_or_else(|| Error::Config("sweep needs a seed".into()))?;
    let policy = cfg.proof_policy()?;
    let mut rows = Vec::with_capacity(cfg.values.len());
    for (i, &v) in cfg.values.iter().enumerate() {
        let mut point = cfg.clone();
        let n = match param {
            "n" => {
                if v < 1.0 || v.fract() != 0.0 {
                    return Err(Error::Config(format!("sweep value {v} is not a size")));
                }
                v as usize
            }
            "eps" => {
                point.eps = v;
                cfg.n
            }
            other => return Err(Error::Config(format!("cannot sweep {other:?}; use n or eps"))),
        };
        let built = build_instance(&point, n, seed)?;
        let id = format!("{}-{i}", cfg.id);
        rows.push(estimate(&id, built.instance.as_ref(), &policy, point.trials, seed, &point.constants)?);
    }
    let x = |r: &ReportRow| if param == "n" { r.n as f64 } else { 1.0 / r.eps };
    let against = if param == "n" { "n" } else { "1/eps" };
    let mut slopes = Vec::new();
    if rows.len() >= 2 {
        let metrics: [(&'static str, fn(&ReportRow) -> f64); 4] = [
            ("max_modeled_queries", |r| r.max_modeled_queries as f64),
            ("mean_modeled_queries", |r| r.mean_modeled_queries),
            ("max_classical_queries", |r| r.max_classical_queries as f64),
            ("mean_classical_queries", |r| r.mean_classical_queries),
        ];
        for (metric, get) in metrics {
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| (x(r), get(r))).collect();
            if pts.iter().all(|p| p.1 > 0.0) {
                slopes.push(SlopeFit {
                    against: against.to_string(),
                    metric,
                    slope: log_log_slope(&pts),
                });
            }
        }
    }
    Ok(SweepResult { rows, slopes })
}
