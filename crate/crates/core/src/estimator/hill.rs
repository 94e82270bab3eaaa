use super::{EstimateResult, Method, OrderedSample, TailWindow};
use crate::error::{Error, Result};

/// Average of `ln X_j` for `j = r..=l`.
pub fn mean_log(sample: &OrderedSample, window: TailWindow) -> Result<f64> {
    window.check(sample)?;
    let sum: f64 = (window.r..=window.l).map(|j| sample.x(j).ln()).sum();
    Ok(sum / window.size() as f64)
}

/// Trapezoid-weighted average of `ln X_j` over the window: the two end
/// values get half weight and the total is divided by `k - 1`.
pub fn mean_log_simpson(sample: &OrderedSample, window: TailWindow) -> Result<f64> {
    window.check(sample)?;
    let k = window.size();
    if k < 3 {
        return Err(Error::Window(format!("trapezoid average needs at least 3 points, got {k}")));
    }
    let ends = 0.5 * (sample.x(window.r).ln() + sample.x(window.l).ln());
    let inner: f64 = (window.r + 1..window.l).map(|j| sample.x(j).ln()).sum();
    Ok((ends + inner) / (k - 1) as f64)
}

/// `H_k = (1/k) sum_{j<=k} ln X_j - ln X_k`.
pub fn hill_statistic(sample: &OrderedSample, k: usize) -> Result<f64> {
    let window = hill_window(sample, k)?;
    Ok(mean_log(sample, window)? - sample.x(k).ln())
}

/// Hill's original form `(1/(r+1)) sum_{j<=r} ln X_j - (r/(r+1)) ln X_{r+1}`,
/// equal to `H_{r+1}`.
pub fn hill_hat(sample: &OrderedSample, r: usize) -> Result<f64> {
    if r < 1 || r + 1 > sample.len() {
        return Err(Error::Window(format!(
            "need 1 <= r < {}, got r = {r}",
            sample.len()
        )));
    }
    let top: f64 = (1..=r).map(|j| sample.x(j).ln()).sum();
    let rf = r as f64;
    Ok(top / (rf + 1.0) - rf / (rf + 1.0) * sample.x(r + 1).ln())
}

/// Classical Hill estimate from the `k` largest observations.
pub fn hill_estimate(sample: &OrderedSample, k: usize) -> Result<EstimateResult> {
    let window = hill_window(sample, k)?;
    let mean = mean_log(sample, window)?;
    hill_from_mean(sample, window, mean)
}

fn hill_window(sample: &OrderedSample, k: usize) -> Result<TailWindow> {
    if k < 2 || k > sample.len() {
        return Err(Error::Window(format!(
            "Hill estimate needs 2 <= k <= {}, got k = {k}",
            sample.len()
        )));
    }
    Ok(TailWindow { l: k, r: 1 })
}

/// Hill estimate anchored at `X_l`, with `mean` already computed over the
/// window. Also serves as the seed for the iterative solver.
pub(crate) fn hill_from_mean(
    sample: &OrderedSample,
    window: TailWindow,
    mean: f64,
) -> Result<EstimateResult> {
    let (low, high) = window.bounds(sample);
    let h = mean - low.ln();
    if low == high || h.is_nan() || h <= 0.0 {
        return Err(Error::DegenerateSample(format!(
            "all {} values in the window are equal to {low}",
            window.size()
        )));
    }
    let alpha = 1.0 / h;
    Ok(EstimateResult {
        alpha,
        mu: alpha + 1.0,
        method: Method::Hill,
        iterations: 0,
        converged: true,
        window_low: low,
        window_high: high,
        k: window.size(),
        mean_log: mean,
    })
}
