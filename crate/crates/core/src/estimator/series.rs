use super::hill::hill_from_mean;
use super::solver::improved_from_mean;
use super::{OrderedSample, SolverConfig, TailWindow};
use crate::error::{Error, Result};

/// One abscissa of a Hill plot. Estimates that could not be computed (tied
/// values, solver failure) are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillPlotPoint {
    pub l: usize,
    pub mu_hill: Option<f64>,
    pub mu_improved: Option<f64>,
}

/// Classical and bounded-domain estimates as the lower index `l` grows.
#[derive(Debug, Clone, PartialEq)]
pub struct HillPlotSeries {
    pub r: usize,
    pub points: Vec<HillPlotPoint>,
}

impl HillPlotSeries {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Computes, for every `l` in `r+1..=N`, the Hill estimate from the top `l`
/// values and the bounded-domain estimate over the window `(l, r)`.
pub fn hill_plot_series(
    sample: &OrderedSample,
    r: usize,
    config: &SolverConfig,
) -> Result<HillPlotSeries> {
    let n = sample.len();
    if r < 1 || r >= n {
        return Err(Error::Window(format!("need 1 <= r < {n}, got r = {r}")));
    }
    config.validate()?;

    // Running sums accumulate in the same order as `mean_log`.
    let mut top_sum: f64 = (1..=r).map(|j| sample.x(j).ln()).sum();
    let mut window_sum = sample.x(r).ln();
    let mut points = Vec::with_capacity(n - r);
    for l in r + 1..=n {
        let log_x = sample.x(l).ln();
        top_sum += log_x;
        window_sum += log_x;

        let hill_window = TailWindow { l, r: 1 };
        let mu_hill = hill_from_mean(sample, hill_window, top_sum / l as f64)
            .ok()
            .map(|e| e.mu);
        let window = TailWindow { l, r };
        let mean = window_sum / window.size() as f64;
        let mu_improved = improved_from_mean(sample, window, mean, config)
            .ok()
            .map(|e| e.mu);
        points.push(HillPlotPoint { l, mu_hill, mu_improved });
    }
    Ok(HillPlotSeries { r, points })
}
