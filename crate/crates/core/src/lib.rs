//! Tail-exponent estimation for samples drawn from power-law-like densities.
//!
//! Two estimators are provided. The classical Hill estimator uses the top `k`
//! order statistics and implicitly assumes the data extends to infinity. The
//! bounded-domain estimator also accounts for the largest retained value and
//! solves a transcendental equation for the exponent, which makes it usable
//! for truncated data, slowly decaying densities and even increasing ones
//! (negative exponents).
//!
//! The [`sampler`] and [`experiments`] modules generate synthetic data from
//! tabulated densities and reproduce a fixed benchmark of configurations.

pub mod cli;
mod error;
pub mod estimator;
pub mod experiments;
pub mod sampler;

pub use error::{Error, Result};
pub use estimator::{
    EstimateResult, HillPlotPoint, HillPlotSeries, Method, OrderedSample, SolverConfig, TailWindow,
};
