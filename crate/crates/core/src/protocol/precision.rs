use crate::error::{Error, Result};

/// One precision-sampling level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub j: u32,
    /// `2^{-j}`.
    pub sub_proximity: f64,
    pub rounds: u64,
}

/// `max(1, log₂(1/ε))`.
pub fn log_factor(eps: f64) -> f64 {
    (1.0 / eps).log2().max(1.0)
}

/// Levels `j = 1..=⌈log₂(1/ε)⌉+1` with
/// `rounds_j = ⌈c_ps·√(max(1, log₂(1/ε)) / (2^j·ε))⌉`.
pub fn precision_sampling_levels(eps: f64, c_ps: f64) -> Result<Vec<Level>> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Config(format!("proximity must lie in (0,1], got {eps}")));
    }
    let top = (1.0 / eps).log2().ceil().max(0.0) as u32 + 1;
    let lf = log_factor(eps);
    Ok((1..=top)
        .map(|j| {
            let scale = 2f64.powi(j as i32);
            let raw = c_ps * (lf / (scale * eps)).sqrt();
            Level {
                j,
                sub_proximity: 1.0 / scale,
                rounds: (raw - 1e-9).ceil().max(1.0) as u64,
            }
        })
        .collect())
}
