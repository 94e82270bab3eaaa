//! Hill and bounded-domain tail-exponent estimators.
//!
//! Samples are kept as reversed order statistics: `X_1 >= X_2 >= ... >= X_N`.
//! All indices exposed by this module are 1-based to match that convention.

mod correction;
mod hill;
mod series;
mod solver;

pub use correction::{correction, correction_derivative, gfun, gfun_slope};
pub use hill::{hill_estimate, hill_hat, hill_statistic, mean_log, mean_log_simpson};
pub use series::{hill_plot_series, HillPlotPoint, HillPlotSeries};
pub use solver::{improved_estimate, solve_direct, solve_iterative};

use crate::error::{Error, Result};

/// Positive observations sorted in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedSample {
    values: Vec<f64>,
}

impl OrderedSample {
    /// Builds a sample from observations in any order.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        validate_values(&values)?;
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    /// Wraps observations that are already sorted in decreasing order.
    pub fn from_descending(values: Vec<f64>) -> Result<Self> {
        validate_values(&values)?;
        if let Some(i) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidSample(format!(
                "values not in decreasing order at position {}",
                i + 2
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: a valid sample holds at least two observations.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The `i`-th largest observation, `X_i` (1-based).
    ///
    /// # Panics
    /// If `i` is zero or larger than the sample length.
    pub fn x(&self, i: usize) -> f64 {
        assert!(i >= 1 && i <= self.values.len(), "order index {i} out of range");
        self.values[i - 1]
    }

    /// Largest observation `X_1`.
    pub fn max(&self) -> f64 {
        self.values[0]
    }

    /// Smallest observation `X_N`.
    pub fn min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Multiplies every observation by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::Argument(format!("scale factor must be positive, got {factor}")));
        }
        Self::from_descending(self.values.iter().map(|v| v * factor).collect())
    }
}

fn validate_values(values: &[f64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::InvalidSample(format!(
            "need at least 2 observations, got {}",
            values.len()
        )));
    }
    if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidSample(format!(
            "observation {} is not a positive finite number: {v}",
            i + 1
        )));
    }
    Ok(())
}

/// Index pair selecting `X_r, ..., X_l` (with `r < l`) from an ordered sample.
///
/// `X_l` is the smallest retained value and plays the role of the lower bound,
/// `X_r` the largest and plays the role of the upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailWindow {
    pub l: usize,
    pub r: usize,
}

impl TailWindow {
    pub fn new(l: usize, r: usize) -> Result<Self> {
        if r < 1 || r >= l {
            return Err(Error::Window(format!("need 1 <= r < l, got l = {l}, r = {r}")));
        }
        Ok(Self { l, r })
    }

    /// The whole sample: `l = N`, `r = 1`.
    pub fn full(sample: &OrderedSample) -> Self {
        Self { l: sample.len(), r: 1 }
    }

    /// Number of retained observations, `l - r + 1`.
    pub fn size(&self) -> usize {
        self.l - self.r + 1
    }

    pub fn check(&self, sample: &OrderedSample) -> Result<()> {
        if self.r < 1 || self.r >= self.l || self.l > sample.len() {
            return Err(Error::Window(format!(
                "window (l = {}, r = {}) invalid for sample of length {}",
                self.l,
                self.r,
                sample.len()
            )));
        }
        Ok(())
    }

    /// `(X_l, X_r)`.
    pub fn bounds(&self, sample: &OrderedSample) -> (f64, f64) {
        (sample.x(self.l), sample.x(self.r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Hill,
    ImprovedDirect,
    ImprovedIterative,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Hill => "hill",
            Method::ImprovedDirect => "improved-direct",
            Method::ImprovedIterative => "improved-iterative",
        }
    }
}

/// Outcome of one estimation: `mu = alpha + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    pub alpha: f64,
    pub mu: f64,
    pub method: Method,
    /// Update steps performed; zero for the Hill and direct paths.
    pub iterations: usize,
    pub converged: bool,
    /// `X_l`, the lower bound of the window.
    pub window_low: f64,
    /// `X_r`, the upper bound of the window.
    pub window_high: f64,
    pub k: usize,
    pub mean_log: f64,
}

/// Tolerances for the bounded-domain solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Convergence threshold on successive or bracketing values of alpha.
    pub alpha_tolerance: f64,
    /// Threshold on the estimating-equation residual.
    pub residual_tolerance: f64,
    /// Cap on update steps for the iterative solver.
    pub max_iterations: usize,
    /// Bracketing stops growing once `|alpha|` exceeds this.
    pub bracket_limit: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha_tolerance: 1e-10,
            residual_tolerance: 1e-10,
            max_iterations: 100,
            bracket_limit: 1e4,
        }
    }
}

impl SolverConfig {
    /// Same tolerances with the iteration capped at `max_iterations` steps.
    pub fn with_max_iterations(self, max_iterations: usize) -> Self {
        Self { max_iterations, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.alpha_tolerance)
            || !positive(self.residual_tolerance)
            || !positive(self.bracket_limit)
            || self.max_iterations < 1
        {
            return Err(Error::Argument(format!("invalid solver configuration: {self:?}")));
        }
        Ok(())
    }
}
