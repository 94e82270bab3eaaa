//! Solvers for the bounded-domain estimating equation
//! `mean_log = 1/alpha + C(alpha, X_l, X_r)`.

use super::correction::MeanLogCurve;
use super::hill::{hill_from_mean, mean_log};
use super::{EstimateResult, Method, OrderedSample, SolverConfig, TailWindow};
use crate::error::{Error, Result};

/// Hard cap on refinement steps once a bracket is found. Bisection alone
/// needs about 110 steps to go from `2e4` wide to one ulp.
const MAX_REFINE_STEPS: usize = 400;

/// Solves `G(alpha) = mean_log` for the bounds `low < high` by bracketing
/// followed by safeguarded false-position (Illinois) refinement.
///
/// `G` is strictly decreasing from `ln high` to `ln low`, so a root exists
/// and is unique whenever `ln low < mean_log < ln high`.
pub fn solve_direct(
    mean_log: f64,
    low: f64,
    high: f64,
    config: &SolverConfig,
) -> Result<EstimateResult> {
    config.validate()?;
    let curve = MeanLogCurve::new(low, high)?;
    if !(mean_log > curve.log_low && mean_log < curve.log_high()) {
        return Err(Error::DegenerateSample(format!(
            "mean log {mean_log} must lie strictly between ln {low} and ln {high}"
        )));
    }
    let residual = |alpha: f64| curve.value(alpha) - mean_log;
    let (lo, hi) = bracket(&residual, config.bracket_limit)?;
    let alpha = refine(&residual, lo, hi, config)?;
    Ok(EstimateResult {
        alpha,
        mu: alpha + 1.0,
        method: Method::ImprovedDirect,
        iterations: 0,
        converged: true,
        window_low: low,
        window_high: high,
        k: 0,
        mean_log,
    })
}

/// A decreasing residual's bracket `(lo, hi)` with `f(lo) >= 0 >= f(hi)`,
/// grown by doubling from `[-1, 1]`.
fn bracket(f: &impl Fn(f64) -> f64, limit: f64) -> Result<(f64, f64)> {
    let mut lo = -1.0_f64.min(limit);
    let mut hi = 1.0_f64.min(limit);
    while f(hi) > 0.0 {
        if hi >= limit {
            return Err(Error::SolverFailure(format!("no root for alpha <= {limit}")));
        }
        lo = hi;
        hi = (2.0 * hi).min(limit);
    }
    while f(lo) < 0.0 {
        if lo <= -limit {
            return Err(Error::SolverFailure(format!("no root for alpha >= -{limit}")));
        }
        hi = lo;
        lo = (2.0 * lo).max(-limit);
    }
    Ok((lo, hi))
}

fn refine(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, config: &SolverConfig) -> Result<f64> {
    let (mut f_lo, mut f_hi) = (f(lo), f(hi));
    // Weights applied to the stale endpoint by the Illinois modification.
    let (mut w_lo, mut w_hi) = (1.0, 1.0);
    let mut last_side = 0i8;
    let mut checkpoint = hi - lo;
    let mut force_bisect = false;

    for step in 0..MAX_REFINE_STEPS {
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_hi == 0.0 {
            return Ok(hi);
        }
        let width = hi - lo;
        let mid = lo + 0.5 * width;
        let best = f_lo.abs().min(f_hi.abs());
        if mid <= lo || mid >= hi || (width <= config.alpha_tolerance && best <= config.residual_tolerance) {
            break;
        }

        let (a, b) = (w_lo * f_lo, w_hi * f_hi);
        let secant = (lo * b - hi * a) / (b - a);
        let x = if force_bisect || !(secant > lo && secant < hi) { mid } else { secant };
        force_bisect = false;

        let fx = f(x);
        if fx > 0.0 {
            lo = x;
            f_lo = fx;
            w_lo = 1.0;
            if last_side == -1 {
                w_hi *= 0.5;
            }
            last_side = -1;
        } else if fx < 0.0 {
            hi = x;
            f_hi = fx;
            w_hi = 1.0;
            if last_side == 1 {
                w_lo *= 0.5;
            }
            last_side = 1;
        } else {
            return Ok(x);
        }

        // The bracket must at least halve every three steps.
        if step % 3 == 2 {
            if hi - lo > 0.5 * checkpoint {
                force_bisect = true;
            }
            checkpoint = hi - lo;
        }
    }

    let (alpha, res) = if f_lo.abs() <= f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
    if res.abs() > config.residual_tolerance {
        return Err(Error::SolverFailure(format!(
            "residual {res:e} at alpha = {alpha} exceeds tolerance {:e}",
            config.residual_tolerance
        )));
    }
    Ok(alpha)
}

/// Fixed-point iteration seeded with the Hill value over the window,
///
/// ```text
/// alpha' = alpha * (1 + (alpha m - alpha C - 1) / (alpha^2 D - 1))
/// ```
///
/// run until two successive iterates differ by less than
/// `config.alpha_tolerance` or `config.max_iterations` updates were made.
/// Running out of iterations is reported through `converged = false`.
pub fn solve_iterative(
    sample: &OrderedSample,
    window: TailWindow,
    config: &SolverConfig,
) -> Result<EstimateResult> {
    config.validate()?;
    let mean = mean_log(sample, window)?;
    let seed = hill_from_mean(sample, window, mean)?;
    let curve = MeanLogCurve::new(seed.window_low, seed.window_high)?;

    let mut alpha = seed.alpha;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iterations {
        // alpha C + 1 = alpha G and alpha^2 D - 1 = alpha^2 G'; the right-hand
        // forms stay accurate when alpha is small.
        let numerator = alpha * (mean - curve.value(alpha));
        let denominator = alpha * alpha * curve.slope(alpha);
        if denominator == 0.0 || !denominator.is_finite() {
            return Err(Error::SolverFailure(format!(
                "update denominator vanished at alpha = {alpha} after {iterations} steps"
            )));
        }
        let next = alpha * (1.0 + numerator / denominator);
        iterations += 1;
        if !next.is_finite() {
            return Err(Error::SolverFailure(format!(
                "iteration diverged after {iterations} steps from alpha = {alpha}"
            )));
        }
        let change = (next - alpha).abs();
        alpha = next;
        if change < config.alpha_tolerance {
            converged = true;
            break;
        }
    }

    Ok(EstimateResult {
        alpha,
        mu: alpha + 1.0,
        method: Method::ImprovedIterative,
        iterations,
        converged,
        ..seed
    })
}

/// Bounded-domain estimate over `window`: solves the estimating equation
/// with `L = X_l`, `R = X_r` and the window's mean log.
pub fn improved_estimate(
    sample: &OrderedSample,
    window: TailWindow,
    config: &SolverConfig,
) -> Result<EstimateResult> {
    let mean = mean_log(sample, window)?;
    improved_from_mean(sample, window, mean, config)
}

pub(crate) fn improved_from_mean(
    sample: &OrderedSample,
    window: TailWindow,
    mean: f64,
    config: &SolverConfig,
) -> Result<EstimateResult> {
    let (low, high) = window.bounds(sample);
    if low == high {
        return Err(Error::DegenerateSample(format!(
            "all {} values in the window are equal to {low}",
            window.size()
        )));
    }
    let direct = solve_direct(mean, low, high, config)?;
    Ok(EstimateResult { k: window.size(), ..direct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::{correction, correction_derivative, gfun};
    use proptest::prelude::*;
    use std::f64::consts::E;

    fn config() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn midpoint_gives_zero_alpha() {
        let (l, r) = (3.0_f64, 150.0_f64);
        let est = solve_direct(0.5 * (l.ln() + r.ln()), l, r, &config()).unwrap();
        assert!(est.alpha.abs() < 1e-12);
        assert!((est.mu - 1.0).abs() < 1e-12);
        assert_eq!(est.method, Method::ImprovedDirect);
        assert!(est.converged);
    }

    #[test]
    fn inverts_hand_value() {
        let est = solve_direct(1.0 - 1.0 / (E - 1.0), 1.0, E, &config()).unwrap();
        assert!((est.alpha - 1.0).abs() < 1e-10);
        assert!((est.mu - 2.0).abs() < 1e-10);
        let est = solve_direct(0.418023, 1.0, E, &config()).unwrap();
        assert!((est.alpha - 1.0).abs() < 1e-5);
    }

    #[test]
    fn round_trip_table() {
        for target in [-4.5, -2.0, -0.5, 0.5, 4.0] {
            let m = gfun(target, 3.0, 150.0).unwrap();
            let est = solve_direct(m, 3.0, 150.0, &config()).unwrap();
            assert!((est.alpha - target).abs() < 1e-8, "{target}: {}", est.alpha);
            let res = gfun(est.alpha, 3.0, 150.0).unwrap() - m;
            assert!(res.abs() < config().residual_tolerance);
        }
    }

    #[test]
    fn direct_errors() {
        let c = config();
        assert!(matches!(solve_direct(1.0, 1.0, E, &c), Err(Error::DegenerateSample(_))));
        assert!(matches!(solve_direct(0.0, 1.0, E, &c), Err(Error::DegenerateSample(_))));
        assert!(matches!(solve_direct(0.5, 2.0, 1.0, &c), Err(Error::DegenerateBounds { .. })));
        // Root near alpha = 50 is beyond a bracket limit of 10.
        let m = gfun(50.0, 1.0, E).unwrap();
        let tight = SolverConfig { bracket_limit: 10.0, ..c };
        assert!(matches!(solve_direct(m, 1.0, E, &tight), Err(Error::SolverFailure(_))));
        assert!((solve_direct(m, 1.0, E, &c).unwrap().alpha - 50.0).abs() < 1e-6);
    }

    #[test]
    fn iteration_converges_from_hill_seed() {
        // Three points whose mean log equals G(alpha*) over [1, e].
        let target = 1.0;
        let m = gfun(target, 1.0, E).unwrap();
        let mid = (3.0 * m - 1.0).exp();
        let s = OrderedSample::new(vec![E, mid, 1.0]).unwrap();
        let w = TailWindow::full(&s);
        let est = solve_iterative(&s, w, &config()).unwrap();
        assert!(est.converged);
        assert!((est.alpha - target).abs() < 1e-9, "{}", est.alpha);
        assert_eq!(est.method, Method::ImprovedIterative);
        assert!(est.iterations > 0 && est.iterations < 20);

        let capped = solve_iterative(&s, w, &config().with_max_iterations(4)).unwrap();
        assert_eq!(capped.iterations, 4);
        assert!((capped.alpha - target).abs() < 1e-3);
    }

    #[test]
    fn iteration_update_matches_literal_form() {
        let (l, r) = (3.0, 40.0);
        let m = 2.1;
        for alpha in [-3.0, -0.7, 0.4, 1.3, 6.0] {
            let c = correction(alpha, l, r).unwrap();
            let d = correction_derivative(alpha, l, r).unwrap();
            let literal = alpha * (1.0 + (alpha * m - alpha * c - 1.0) / (alpha * alpha * d - 1.0));
            let curve = MeanLogCurve::new(l, r).unwrap();
            let stable = alpha
                * (1.0 + alpha * (m - curve.value(alpha)) / (alpha * alpha * curve.slope(alpha)));
            assert!((literal - stable).abs() < 1e-9 * literal.abs().max(1.0), "{literal} vs {stable}");
        }
    }

    #[test]
    fn iteration_reports_non_convergence() {
        let s = OrderedSample::new(vec![9.0, 5.0, 4.2, 3.3, 3.0]).unwrap();
        let est = solve_iterative(&s, TailWindow::full(&s), &config().with_max_iterations(1)).unwrap();
        assert!(!est.converged);
        assert_eq!(est.iterations, 1);
    }

    #[test]
    fn two_point_window_gives_mu_one() {
        let s = OrderedSample::new(vec![7.0, 2.0, 1.0]).unwrap();
        let est = improved_estimate(&s, TailWindow::new(2, 1).unwrap(), &config()).unwrap();
        assert!(est.alpha.abs() < 1e-12);
        assert!((est.mu - 1.0).abs() < 1e-12);
        assert_eq!(est.k, 2);
        assert_eq!((est.window_low, est.window_high), (2.0, 7.0));
    }

    #[test]
    fn improved_tied_window_is_degenerate() {
        let s = OrderedSample::new(vec![3.0, 3.0, 3.0, 1.0]).unwrap();
        let w = TailWindow::new(3, 1).unwrap();
        assert!(matches!(improved_estimate(&s, w, &config()), Err(Error::DegenerateSample(_))));
        assert!(matches!(solve_iterative(&s, w, &config()), Err(Error::DegenerateSample(_))));
    }

    proptest! {
        #[test]
        fn direct_recovers_manufactured_alpha(
            target in -10.0..10.0f64, low in 0.01..1e3f64, ratio in 1.01..1e4f64,
        ) {
            let high = low * ratio;
            let m = gfun(target, low, high).unwrap();
            prop_assume!(m > low.ln() && m < high.ln());
            // Where G is flat the root is only determined to residual / |G'|.
            let slope = crate::estimator::gfun_slope(target, low, high).unwrap();
            prop_assume!(slope.abs() > 1e-4);
            let est = solve_direct(m, low, high, &config()).unwrap();
            prop_assert!((est.alpha - target).abs() < 1e-8, "{} vs {}", est.alpha, target);
        }

        #[test]
        fn methods_agree(values in proptest::collection::vec(1.0..100.0f64, 3..60)) {
            let s = OrderedSample::new(values).unwrap();
            prop_assume!(s.max() > s.min());
            let w = TailWindow::full(&s);
            let direct = improved_estimate(&s, w, &config()).unwrap();
            if let Ok(iter) = solve_iterative(&s, w, &config()) {
                if iter.converged {
                    prop_assert!((iter.alpha - direct.alpha).abs() < 1e-6,
                        "{} vs {}", iter.alpha, direct.alpha);
                }
            }
        }
    }
}
