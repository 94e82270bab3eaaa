//! Benchmark harness: the 13 table configurations and the four Hill-plot
//! examples, with CSV and SVG reporting.

mod registry;
pub mod report;

pub use registry::{
    figure_config, table_row, ExpectedMu, FigureConfig, ReferenceValues, TableRowConfig, FIGURES,
    PADE_P2, PADE_P4, TABLE_ROWS,
};

use crate::error::{Error, Result};
use crate::estimator::{
    hill_estimate, hill_plot_series, improved_estimate, solve_iterative, HillPlotSeries,
    OrderedSample, SolverConfig, TailWindow,
};
use crate::sampler::{draw, sigma_statistic, tabulate, DistributionSpec, GridDistribution, SampleRequest};

/// Update steps behind the `mu_iter5` column: the fifth approximant is
/// reached after four applications of the update to the Hill seed.
pub const ITER5_STEPS: usize = 4;

/// Seeds of the canonical multi-seed report.
pub fn canonical_seeds() -> Vec<u64> {
    (1..=20).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRowResult {
    pub row_id: usize,
    pub spec: DistributionSpec,
    pub n_rand: usize,
    /// Smallest draw, `X_N`.
    pub observed_low: f64,
    /// Largest draw, `X_1`.
    pub observed_high: f64,
    pub sigma: f64,
    pub mu_input: ExpectedMu,
    pub mu_hill: f64,
    /// Iteration capped at [`ITER5_STEPS`] updates.
    pub mu_iter5: f64,
    /// Whether the capped iteration had already met its tolerance.
    pub iter5_converged: bool,
    /// Iteration run to tolerance, when it converged.
    pub mu_iterative: Option<f64>,
    pub mu_direct: f64,
    pub seed: u64,
}

/// Estimates for one drawn sample over its full window (`l = N`, `r = 1`).
pub fn evaluate_row_sample(
    config: &TableRowConfig,
    spec: DistributionSpec,
    sample: &OrderedSample,
    seed: u64,
) -> Result<TableRowResult> {
    let solver = SolverConfig::default();
    let window = TailWindow::full(sample);
    let hill = hill_estimate(sample, sample.len())?;
    let iter5 = solve_iterative(sample, window, &solver.with_max_iterations(ITER5_STEPS))?;
    let iterative = solve_iterative(sample, window, &solver)
        .ok()
        .filter(|e| e.converged)
        .map(|e| e.mu);
    let direct = improved_estimate(sample, window, &solver)?;
    Ok(TableRowResult {
        row_id: config.row_id,
        spec,
        n_rand: sample.len(),
        observed_low: sample.min(),
        observed_high: sample.max(),
        sigma: sigma_statistic(sample),
        mu_input: config.mu_input,
        mu_hill: hill.mu,
        mu_iter5: iter5.mu,
        iter5_converged: iter5.converged,
        mu_iterative: iterative,
        mu_direct: direct.mu,
        seed,
    })
}

fn run_row_on_grid(
    config: &TableRowConfig,
    spec: DistributionSpec,
    grid: &GridDistribution,
    seed: u64,
) -> Result<TableRowResult> {
    let sample = draw(grid, SampleRequest::new(config.n_rand, seed)?)?;
    evaluate_row_sample(config, spec, &sample, seed)
}

/// Draws the sample of table row `row_id` with `seed` and estimates it.
pub fn run_table_row(row_id: usize, seed: u64) -> Result<TableRowResult> {
    let config = table_row(row_id)?;
    let spec = config.spec()?;
    let grid = tabulate(&spec)?;
    run_row_on_grid(config, spec, &grid, seed)
}

/// Runs the selected rows for every seed, ordered by `(row_id, seed)`.
pub fn run_table(rows: &[usize], seeds: &[u64]) -> Result<Vec<TableRowResult>> {
    if seeds.is_empty() {
        return Err(Error::Argument("at least one seed is required".into()));
    }
    let mut rows = rows.to_vec();
    rows.sort_unstable();
    rows.dedup();
    let mut seeds = seeds.to_vec();
    seeds.sort_unstable();
    seeds.dedup();

    let mut out = Vec::with_capacity(rows.len() * seeds.len());
    for row_id in rows {
        let config = table_row(row_id)?;
        let spec = config.spec()?;
        let grid = tabulate(&spec)?;
        for &seed in &seeds {
            out.push(run_row_on_grid(config, spec, &grid, seed)?);
        }
    }
    Ok(out)
}

/// All 13 rows for every seed.
pub fn run_full_table(seeds: &[u64]) -> Result<Vec<TableRowResult>> {
    let rows: Vec<usize> = TABLE_ROWS.iter().map(|r| r.row_id).collect();
    run_table(&rows, seeds)
}

/// Across-seed statistics of one table row.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSummary {
    pub row_id: usize,
    pub runs: usize,
    pub mu_input: ExpectedMu,
    pub mean_mu_hill: f64,
    pub std_mu_hill: f64,
    pub mean_mu_iter5: f64,
    pub std_mu_iter5: f64,
}

/// Mean and sample standard deviation of `mu_hill` and `mu_iter5` per row.
pub fn summarize(results: &[TableRowResult]) -> Vec<RowSummary> {
    let mut ids: Vec<usize> = results.iter().map(|r| r.row_id).collect();
    ids.sort_unstable();
    ids.dedup();
    ids.into_iter()
        .map(|row_id| {
            let rows: Vec<&TableRowResult> = results.iter().filter(|r| r.row_id == row_id).collect();
            let hill: Vec<f64> = rows.iter().map(|r| r.mu_hill).collect();
            let iter5: Vec<f64> = rows.iter().map(|r| r.mu_iter5).collect();
            let (mean_mu_hill, std_mu_hill) = mean_std(&hill);
            let (mean_mu_iter5, std_mu_iter5) = mean_std(&iter5);
            RowSummary {
                row_id,
                runs: rows.len(),
                mu_input: rows[0].mu_input,
                mean_mu_hill,
                std_mu_hill,
                mean_mu_iter5,
                std_mu_iter5,
            }
        })
        .collect()
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSeriesResult {
    pub example_id: usize,
    pub figure_number: usize,
    pub series: HillPlotSeries,
    pub expected_mu: f64,
    pub spec: DistributionSpec,
    pub n: usize,
    pub seed: u64,
}

impl FigureSeriesResult {
    /// Mean of the Hill and improved estimates over `l` in `range`, skipping
    /// absent points.
    pub fn mean_over(&self, range: std::ops::RangeInclusive<usize>) -> (f64, f64) {
        let pts = self.series.points.iter().filter(|p| range.contains(&p.l));
        let (mut hs, mut hn, mut is, mut inn) = (0.0, 0usize, 0.0, 0usize);
        for p in pts {
            if let Some(h) = p.mu_hill {
                hs += h;
                hn += 1;
            }
            if let Some(i) = p.mu_improved {
                is += i;
                inn += 1;
            }
        }
        (hs / hn as f64, is / inn as f64)
    }
}

/// Hill plot (anchored at `r = 1`) for examples 14-17.
pub fn run_figure(example_id: usize, seed: u64) -> Result<FigureSeriesResult> {
    let config = figure_config(example_id)?;
    let spec = config.spec()?;
    let grid = tabulate(&spec)?;
    let sample = draw(&grid, SampleRequest::new(config.n, seed)?)?;
    let series = hill_plot_series(&sample, 1, &SolverConfig::default())?;
    Ok(FigureSeriesResult {
        example_id,
        figure_number: config.figure_number,
        series,
        expected_mu: config.expected_mu,
        spec,
        n: config.n,
        seed,
    })
}
