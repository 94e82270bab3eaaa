//! Synthetic samples from densities tabulated on a uniform grid.
//!
//! A density is evaluated on `grid_points` equally spaced nodes over
//! `[d_low, d_high]`, accumulated with the trapezoid rule into a cumulative
//! table normalized to end at 1, and sampled by inverting that table with
//! linear interpolation inside each cell.
//!
//! Draws use ChaCha20 (`rand_chacha::ChaCha20Rng::seed_from_u64`), so a
//! `(distribution, n, seed)` triple always yields the same sample.

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::estimator::{mean_log, OrderedSample, TailWindow};

pub const DEFAULT_GRID_POINTS: usize = 10_000;
pub const MIN_GRID_POINTS: usize = 1_000;
pub const MAX_GRID_POINTS: usize = 100_000;

/// Shape of an (unnormalized) density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionKind {
    /// `x^-mu`
    Power { mu: f64 },
    /// `1 / (1 + p2 x^2 + p4 x^4)`
    Pade14 { p2: f64, p4: f64 },
    /// `ln(x) / x`
    LogOverX,
    /// `1 / (x ln x)`
    InvXLogX,
    /// `1 / sqrt(x)`
    SqrtInv,
    /// `x^exponent`, an increasing density for positive exponents.
    PowerGrowth { exponent: f64 },
    /// `a1 x^-mu1 + a2 x^-mu2`
    TwoPower { a1: f64, mu1: f64, a2: f64, mu2: f64 },
}

impl DistributionKind {
    pub fn density(&self, x: f64) -> f64 {
        match *self {
            DistributionKind::Power { mu } => x.powf(-mu),
            DistributionKind::Pade14 { p2, p4 } => {
                let x2 = x * x;
                1.0 / (1.0 + p2 * x2 + p4 * x2 * x2)
            }
            DistributionKind::LogOverX => x.ln() / x,
            DistributionKind::InvXLogX => 1.0 / (x * x.ln()),
            DistributionKind::SqrtInv => 1.0 / x.sqrt(),
            DistributionKind::PowerGrowth { exponent } => x.powf(exponent),
            DistributionKind::TwoPower { a1, mu1, a2, mu2 } => a1 * x.powf(-mu1) + a2 * x.powf(-mu2),
        }
    }

    /// Short label used in reports, e.g. `x^-5` or `ln(x)/x`.
    pub fn label(&self) -> String {
        match *self {
            DistributionKind::Power { mu } => format!("x^-{mu}"),
            DistributionKind::Pade14 { p2, p4 } => format!("1/(1+{p2}x^2+{p4}x^4)"),
            DistributionKind::LogOverX => "ln(x)/x".to_string(),
            DistributionKind::InvXLogX => "1/(x ln(x))".to_string(),
            DistributionKind::SqrtInv => "1/sqrt(x)".to_string(),
            DistributionKind::PowerGrowth { exponent } => format!("x^{exponent}"),
            DistributionKind::TwoPower { a1, mu1, a2, mu2 } => {
                format!("{a1}x^-{mu1}+{a2}x^-{mu2}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    pub kind: DistributionKind,
    pub d_low: f64,
    pub d_high: f64,
    pub grid_points: usize,
}

impl DistributionSpec {
    pub fn new(kind: DistributionKind, d_low: f64, d_high: f64, grid_points: usize) -> Result<Self> {
        let spec = Self { kind, d_low, d_high, grid_points };
        spec.validate()?;
        Ok(spec)
    }

    /// Spec with the default grid of 10 000 nodes.
    pub fn with_default_grid(kind: DistributionKind, d_low: f64, d_high: f64) -> Result<Self> {
        Self::new(kind, d_low, d_high, DEFAULT_GRID_POINTS)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d_low >= 0.0 && self.d_high.is_finite() && self.d_low < self.d_high) {
            return Err(Error::Spec(format!(
                "domain [{}, {}] must satisfy 0 <= low < high",
                self.d_low, self.d_high
            )));
        }
        if !(MIN_GRID_POINTS..=MAX_GRID_POINTS).contains(&self.grid_points) {
            return Err(Error::Spec(format!(
                "grid_points must be in [{MIN_GRID_POINTS}, {MAX_GRID_POINTS}], got {}",
                self.grid_points
            )));
        }
        Ok(())
    }
}

/// Density and cumulative distribution tabulated on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDistribution {
    xs: Vec<f64>,
    pdf: Vec<f64>,
    cdf: Vec<f64>,
}

impl GridDistribution {
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn pdf(&self) -> &[f64] {
        &self.pdf
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    pub fn d_low(&self) -> f64 {
        self.xs[0]
    }

    pub fn d_high(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    pub fn spacing(&self) -> f64 {
        self.xs[1] - self.xs[0]
    }

    /// Maps `u` in `[0, 1]` to the domain through the tabulated cumulative
    /// distribution, interpolating linearly inside the bracketing cell.
    pub fn invert(&self, u: f64) -> f64 {
        let last = self.cdf.len() - 1;
        if u <= 0.0 {
            return self.xs[0];
        }
        if u >= 1.0 {
            return self.xs[last];
        }
        // cdf[i] <= u < cdf[i + 1]
        let i = self.cdf.partition_point(|&c| c <= u) - 1;
        let (c0, c1) = (self.cdf[i], self.cdf[i + 1]);
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let x = x0 + (u - c0) / (c1 - c0) * (x1 - x0);
        x.clamp(x0, x1)
    }
}

/// Tabulates the density of `spec` and its normalized cumulative distribution.
pub fn tabulate(spec: &DistributionSpec) -> Result<GridDistribution> {
    spec.validate()?;
    let m = spec.grid_points;
    let step = (spec.d_high - spec.d_low) / (m - 1) as f64;
    let mut xs: Vec<f64> = (0..m).map(|i| spec.d_low + i as f64 * step).collect();
    xs[m - 1] = spec.d_high;

    let pdf: Vec<f64> = xs.iter().map(|&x| spec.kind.density(x)).collect();
    if let Some((x, p)) = xs.iter().zip(&pdf).find(|(_, p)| !(p.is_finite() && **p >= 0.0)) {
        return Err(Error::Spec(format!(
            "density {} is {p} at x = {x}; it must be finite and non-negative on the domain",
            spec.kind.label()
        )));
    }

    let mut cdf = Vec::with_capacity(m);
    let mut acc = 0.0;
    cdf.push(0.0);
    for i in 1..m {
        acc += 0.5 * (pdf[i - 1] + pdf[i]) * (xs[i] - xs[i - 1]);
        cdf.push(acc);
    }
    if !(acc > 0.0 && acc.is_finite()) {
        return Err(Error::Spec(format!("density {} has no mass on the domain", spec.kind.label())));
    }
    for c in &mut cdf {
        *c /= acc;
    }
    cdf[m - 1] = 1.0;
    Ok(GridDistribution { xs, pdf, cdf })
}

/// Number of draws and generator seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleRequest {
    pub n: usize,
    pub seed: u64,
}

impl SampleRequest {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument(format!("need at least 2 draws, got {n}")));
        }
        Ok(Self { n, seed })
    }
}

/// Draws `req.n` values by inverse-CDF sampling, returned in decreasing order.
pub fn draw(dist: &GridDistribution, req: SampleRequest) -> Result<OrderedSample> {
    let req = SampleRequest::new(req.n, req.seed)?;
    let mut rng = ChaCha20Rng::seed_from_u64(req.seed);
    let values = (0..req.n)
        .map(|_| dist.invert(rng.sample::<f64, _>(Open01)))
        .collect();
    OrderedSample::new(values)
}

/// Average of `ln X_i` over the whole sample.
pub fn sigma_statistic(sample: &OrderedSample) -> f64 {
    mean_log(sample, TailWindow::full(sample)).expect("full window is always valid")
}
