//! The finite-domain correction `C(alpha, L, R)`, its derivative, and the
//! mean-log function `G(alpha) = 1/alpha + C(alpha, L, R)`.
//!
//! With `a = ln L`, `b = ln R`, `span = b - a` and `delta = alpha * span`:
//!
//! ```text
//! C = a - span / (e^delta - 1)
//! D = dC/dalpha = span^2 e^delta / (e^delta - 1)^2 = (span / (2 sinh(delta/2)))^2
//! G = a + span * phi(delta),   phi(d) = 1/d - 1/(e^d - 1)
//! ```
//!
//! These forms never overflow and `G` has no cancellation at `alpha = 0`,
//! where `phi` is evaluated from its Taylor series.

use crate::error::{Error, Result};

/// Below this `|delta|`, `phi` and `phi'` come from their series.
const SERIES_CUTOFF: f64 = 0.05;

fn check_positive(value: f64, name: &str) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!("{name} must be positive and finite, got {value}")))
    }
}

fn check_bounds(low: f64, high: f64) -> Result<()> {
    check_positive(low, "lower bound")?;
    check_positive(high, "upper bound")?;
    if low == high {
        return Err(Error::DegenerateBounds { low, high });
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument(format!("alpha must be finite, got {alpha}")))
    }
}

/// `phi(d) = 1/d - 1/(e^d - 1)`, with `phi(0) = 1/2`.
///
/// Decreases from 1 at `-inf` to 0 at `+inf`; `phi(d) + phi(-d) = 1`.
pub(crate) fn phi(d: f64) -> f64 {
    if d.abs() < SERIES_CUTOFF {
        let d2 = d * d;
        0.5 - d * (1.0 / 12.0 - d2 * (1.0 / 720.0 - d2 * (1.0 / 30240.0 - d2 / 1_209_600.0)))
    } else {
        1.0 / d - 1.0 / d.exp_m1()
    }
}

/// `phi'(d) = -1/d^2 + 1/(4 sinh^2(d/2))`, with `phi'(0) = -1/12`. Always negative.
pub(crate) fn phi_prime(d: f64) -> f64 {
    if d.abs() < SERIES_CUTOFF {
        let d2 = d * d;
        -1.0 / 12.0 + d2 * (1.0 / 240.0 - d2 * (1.0 / 6048.0 - d2 / 172_800.0))
    } else {
        let half = 0.5 / (0.5 * d).sinh();
        half * half - 1.0 / (d * d)
    }
}

/// Correction function `C(alpha, L, R)`.
///
/// Symmetric in `L` and `R`. Diverges like `-1/alpha` at zero, which is
/// reported as [`Error::Singularity`].
pub fn correction(alpha: f64, low: f64, high: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_bounds(low, high)?;
    if alpha == 0.0 {
        return Err(Error::Singularity);
    }
    let (a, b) = (low.ln(), high.ln());
    let span = b - a;
    let delta = alpha * span;
    // Expand around whichever endpoint C approaches so the small term keeps its digits.
    Ok(if delta >= 0.0 {
        a - span / delta.exp_m1()
    } else {
        b + span / (-delta).exp_m1()
    })
}

/// Derivative of [`correction`] with respect to alpha, `D(alpha, L, R)`.
///
/// Symmetric in `L` and `R`. Behaves like `1/alpha^2` near zero, so
/// `alpha = 0` is a [`Error::Singularity`].
pub fn correction_derivative(alpha: f64, low: f64, high: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_bounds(low, high)?;
    if alpha == 0.0 {
        return Err(Error::Singularity);
    }
    let span = high.ln() - low.ln();
    let delta = alpha * span;
    let ratio = span / (2.0 * (0.5 * delta).sinh());
    Ok(ratio * ratio)
}

/// `G` and `G'` for fixed bounds `L < R`, with the logs computed once.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MeanLogCurve {
    pub(crate) log_low: f64,
    pub(crate) span: f64,
}

impl MeanLogCurve {
    pub(crate) fn new(low: f64, high: f64) -> Result<Self> {
        let (log_low, span) = ordered_logs(low, high)?;
        Ok(Self { log_low, span })
    }

    pub(crate) fn log_high(&self) -> f64 {
        self.log_low + self.span
    }

    pub(crate) fn value(&self, alpha: f64) -> f64 {
        self.log_low + self.span * phi(alpha * self.span)
    }

    pub(crate) fn slope(&self, alpha: f64) -> f64 {
        self.span * self.span * phi_prime(alpha * self.span)
    }
}

/// `G(alpha) = 1/alpha + C(alpha, L, R)`, the expected `ln x` of an exact
/// power law `x^-(alpha+1)` restricted to `[L, R]`.
///
/// Continuous through `alpha = 0` where it equals `(ln L + ln R)/2`, strictly
/// decreasing, with limits `ln R` at `-inf` and `ln L` at `+inf`.
pub fn gfun(alpha: f64, low: f64, high: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(MeanLogCurve::new(low, high)?.value(alpha))
}

/// `dG/dalpha = D - 1/alpha^2`, finite everywhere and strictly negative
/// (equal to `-(ln R - ln L)^2 / 12` at `alpha = 0`).
pub fn gfun_slope(alpha: f64, low: f64, high: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(MeanLogCurve::new(low, high)?.slope(alpha))
}

fn ordered_logs(low: f64, high: f64) -> Result<(f64, f64)> {
    check_positive(low, "lower bound")?;
    check_positive(high, "upper bound")?;
    if low >= high {
        return Err(Error::DegenerateBounds { low, high });
    }
    let a = low.ln();
    Ok((a, high.ln() - a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::E;

    /// Textbook form, `(ln L L^-a - ln R R^-a) / (L^-a - R^-a)`.
    fn raw_correction(alpha: f64, low: f64, high: f64) -> f64 {
        let (pl, pr) = (low.powf(-alpha), high.powf(-alpha));
        (low.ln() * pl - high.ln() * pr) / (pl - pr)
    }

    /// Textbook form, `R^a L^a (ln L - ln R)^2 / (L^a - R^a)^2`.
    fn raw_derivative(alpha: f64, low: f64, high: f64) -> f64 {
        let (pl, pr) = (low.powf(alpha), high.powf(alpha));
        let d = low.ln() - high.ln();
        pr * pl * d * d / ((pl - pr) * (pl - pr))
    }

    #[test]
    fn correction_hand_values() {
        let c = correction(1.0, 1.0, E).unwrap();
        assert!((c - (-1.0 / (E - 1.0))).abs() < 1e-15);
        assert!((c + 0.581977).abs() < 1e-6);
    }

    #[test]
    fn derivative_hand_values() {
        let d = correction_derivative(1.0, 1.0, E).unwrap();
        assert!((d - E / ((E - 1.0) * (E - 1.0))).abs() < 1e-15);
        assert!((d - 0.920674).abs() < 1e-6);
    }

    #[test]
    fn gfun_hand_values() {
        let g = gfun(1.0, 1.0, E).unwrap();
        assert!((g - (1.0 - 1.0 / (E - 1.0))).abs() < 1e-15);
        assert!((g - 0.418023).abs() < 1e-6);
        let (l, r) = (3.0_f64, 150.0_f64);
        assert_eq!(gfun(0.0, l, r).unwrap(), l.ln() + 0.5 * (r.ln() - l.ln()));
        assert!((gfun(0.0, l, r).unwrap() - 0.5 * (l.ln() + r.ln())).abs() < 1e-15);
    }

    #[test]
    fn gfun_limits() {
        let (l, r) = (3.0_f64, 150.0_f64);
        assert!((gfun(1e6, l, r).unwrap() - l.ln()).abs() < 1e-5);
        assert!((gfun(-1e6, l, r).unwrap() - r.ln()).abs() < 1e-5);
        assert!((gfun(1e300, l, r).unwrap() - l.ln()).abs() < 1e-12);
        assert!((gfun(-1e300, l, r).unwrap() - r.ln()).abs() < 1e-12);
    }

    #[test]
    fn slope_at_zero() {
        let (l, r) = (2.0_f64, 7.0_f64);
        let span = (r / l).ln();
        assert!((gfun_slope(0.0, l, r).unwrap() + span * span / 12.0).abs() < 1e-15);
    }

    #[test]
    fn series_matches_closed_form_at_cutoff() {
        for d in [SERIES_CUTOFF, -SERIES_CUTOFF] {
            let inner = d * (1.0 - 1e-12);
            let outer = d * (1.0 + 1e-12);
            assert!((phi(inner) - phi(outer)).abs() < 1e-13);
            assert!((phi_prime(inner) - phi_prime(outer)).abs() < 1e-11);
        }
    }

    #[test]
    fn error_paths() {
        assert_eq!(correction(0.0, 1.0, 2.0), Err(Error::Singularity));
        assert_eq!(correction_derivative(0.0, 1.0, 2.0), Err(Error::Singularity));
        assert!(matches!(correction(1.0, 2.0, 2.0), Err(Error::DegenerateBounds { .. })));
        assert!(matches!(correction_derivative(1.0, 2.0, 2.0), Err(Error::DegenerateBounds { .. })));
        assert!(matches!(gfun(1.0, 2.0, 2.0), Err(Error::DegenerateBounds { .. })));
        assert!(matches!(gfun(1.0, 3.0, 2.0), Err(Error::DegenerateBounds { .. })));
        assert!(matches!(gfun(1.0, -1.0, 2.0), Err(Error::Argument(_))));
        assert!(matches!(correction(f64::NAN, 1.0, 2.0), Err(Error::Argument(_))));
    }

    #[test]
    fn large_delta_does_not_overflow() {
        let c = correction(500.0, 1.0, 1e4).unwrap();
        assert!(c.is_finite() && c.abs() < 1e-12);
        let c = correction(-500.0, 1.0, 1e4).unwrap();
        assert!((c - 1e4_f64.ln()).abs() < 1e-12);
        assert_eq!(correction_derivative(500.0, 1.0, 1e4).unwrap(), 0.0);
    }

    proptest! {
        #[test]
        fn correction_symmetric(alpha in -20.0..20.0f64, low in 0.01..1e3f64, ratio in 1.001..1e3f64) {
            prop_assume!(alpha != 0.0);
            let high = low * ratio;
            let c1 = correction(alpha, low, high).unwrap();
            let c2 = correction(alpha, high, low).unwrap();
            prop_assert!((c1 - c2).abs() <= 1e-12 * c1.abs().max(1.0));
            let d1 = correction_derivative(alpha, low, high).unwrap();
            let d2 = correction_derivative(alpha, high, low).unwrap();
            prop_assert!((d1 - d2).abs() <= 1e-12 * d1.abs());
        }

        #[test]
        fn correction_scale_covariant(
            alpha in -10.0..10.0f64, low in 0.1..100.0f64, ratio in 1.01..100.0f64, c in 0.01..100.0f64,
        ) {
            prop_assume!(alpha.abs() > 1e-3);
            let high = low * ratio;
            let lhs = correction(alpha, low, high).unwrap() + c.ln();
            let rhs = correction(alpha, c * low, c * high).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0), "{} vs {}", lhs, rhs);
        }

        #[test]
        fn stable_forms_match_textbook(
            alpha in -8.0..8.0f64, low in 0.1..50.0f64, ratio in 1.05..50.0f64,
        ) {
            let high = low * ratio;
            let delta = alpha * ratio.ln();
            prop_assume!(delta.abs() > 0.01 && delta.abs() < 30.0);
            let c = correction(alpha, low, high).unwrap();
            let c_raw = raw_correction(alpha, low, high);
            let scale = low.ln().abs().max(high.ln().abs()).max(1.0);
            prop_assert!((c - c_raw).abs() <= 1e-12 * scale, "{} vs {}", c, c_raw);
            let d = correction_derivative(alpha, low, high).unwrap();
            let d_raw = raw_derivative(alpha, low, high);
            prop_assert!((d - d_raw).abs() <= 1e-12 * d.abs().max(d_raw.abs()) * 10.0,
                "{} vs {}", d, d_raw);
        }

        #[test]
        fn gfun_strictly_decreasing(
            a1 in -50.0..50.0f64, gap in 1e-3..20.0f64, low in 0.01..1e3f64, ratio in 1.001..1e3f64,
        ) {
            let high = low * ratio;
            let a2 = a1 + gap;
            prop_assert!(gfun(a1, low, high).unwrap() > gfun(a2, low, high).unwrap());
            prop_assert!(gfun_slope(a1, low, high).unwrap() < 0.0);
        }

        #[test]
        fn gfun_matches_definition(alpha in -10.0..10.0f64, low in 0.1..100.0f64, ratio in 1.01..100.0f64) {
            prop_assume!(alpha.abs() > 1e-2);
            let high = low * ratio;
            let g = gfun(alpha, low, high).unwrap();
            let direct = 1.0 / alpha + correction(alpha, low, high).unwrap();
            prop_assert!((g - direct).abs() <= 1e-12 * g.abs().max(1.0) * 10.0);
            let slope = gfun_slope(alpha, low, high).unwrap();
            let direct_slope = correction_derivative(alpha, low, high).unwrap() - 1.0 / (alpha * alpha);
            prop_assert!((slope - direct_slope).abs() <= 1e-8 * (1.0 / (alpha * alpha)));
        }
    }
}
