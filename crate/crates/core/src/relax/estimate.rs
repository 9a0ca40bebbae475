use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Samples whose spread is within this fraction of `max(1, |mean|)` are
/// treated as constant and reported with zero standard error.
pub const CONSTANT_SAMPLE_TOL: f64 = 1e-12;

/// Monte Carlo settings shared by the dual-bound estimators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McConfig {
    pub n: usize,
    pub seed: u64,
    /// Keep every per-scenario value in the result.
    pub keep_values: bool,
}

impl McConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        McConfig { n, seed, keep_values: false }
    }

    pub fn keep_values(mut self) -> Self {
        self.keep_values = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n)`; infinite when the mean is,
    /// zero when the sample is constant up to rounding.
    pub standard_error: f64,
    pub n_scenarios: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_scenario_values: Option<Vec<f64>>,
    pub seed: u64,
}

impl DualEstimate {
    pub fn from_values(values: Vec<f64>, seed: u64, keep: bool) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::TooFewScenarios(n));
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let ss: f64 = values.iter().map(|x| (x - mean) * (x - mean)).sum();
        let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
        let standard_error = if !mean.is_finite() {
            f64::INFINITY
        } else if hi - lo <= CONSTANT_SAMPLE_TOL * mean.abs().max(1.0) {
            0.0
        } else {
            (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt()
        };
        Ok(DualEstimate {
            mean,
            standard_error,
            n_scenarios: n,
            per_scenario_values: keep.then_some(values),
            seed,
        })
    }
}

/// Evaluates `sample(k)` for `k = 0..n` in parallel and reduces in index
/// order, so the output is a pure function of the inputs.
pub(crate) fn run<F>(cfg: &McConfig, sample: F) -> Result<DualEstimate>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    if cfg.n < 2 {
        return Err(Error::TooFewScenarios(cfg.n));
    }
    let values: Vec<f64> = (0..cfg.n as u64).into_par_iter().map(&sample).collect::<Result<_>>()?;
    DualEstimate::from_values(values, cfg.seed, cfg.keep_values)
}
