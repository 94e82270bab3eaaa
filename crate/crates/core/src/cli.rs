//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 unreadable input or bad
//! arguments, 3 non-positive observation, 4 degenerate window.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::estimator::{
    hill_estimate, hill_plot_series, improved_estimate, solve_iterative, EstimateResult, OrderedSample,
    SolverConfig, TailWindow,
};
use crate::experiments::{self, report, PADE_P2, PADE_P4};
use crate::sampler::{self, DistributionKind, DistributionSpec, SampleRequest};

#[derive(Debug, Parser)]
#[command(name = "tailindex", version, about = "Estimate power-law tail exponents on bounded domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the tail exponent of the observations in a file.
    Estimate(EstimateArgs),
    /// Draw a seeded sample from a built-in distribution.
    Simulate(SimulateArgs),
    /// Reproduce the benchmark table.
    Table(TableArgs),
    /// Reproduce the Hill-plot figures (CSV + SVG).
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Text file with one number per line (`#` starts a comment), or a CSV
    /// file when `--column` is given.
    pub input: PathBuf,
    /// Read this named column of a CSV file with a header row.
    #[arg(long)]
    pub column: Option<String>,
    /// Drop observations below this value.
    #[arg(long)]
    pub xmin: Option<f64>,
    /// Drop observations above this value.
    #[arg(long)]
    pub xmax: Option<f64>,
    /// Index of the smallest retained order statistic (1 = largest value).
    #[arg(long, requires = "r")]
    pub l: Option<usize>,
    /// Index of the largest retained order statistic.
    #[arg(long, requires = "l")]
    pub r: Option<usize>,
    /// Write the Hill-plot series (anchored at `r`) to this CSV file.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistName {
    Power,
    Pade,
    Logx,
    Invlogx,
    Sqrtinv,
    Growth,
    Twopower,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub dist: DistName,
    /// Tail exponent for `power` (density x^-mu) and `growth` (density x^-mu, mu < 0).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub p2: Option<f64>,
    #[arg(long)]
    pub p4: Option<f64>,
    #[arg(long)]
    pub a1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu1: Option<f64>,
    #[arg(long)]
    pub a2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu2: Option<f64>,
    #[arg(long)]
    pub dlow: f64,
    #[arg(long)]
    pub dhigh: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// Number of grid nodes for the tabulated distribution.
    #[arg(long, default_value_t = sampler::DEFAULT_GRID_POINTS)]
    pub grid: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Rows to run, e.g. `1,2,9-12`. All 13 by default.
    #[arg(long)]
    pub rows: Option<String>,
    /// Seeds, e.g. `1-20`. Defaults to `1`.
    #[arg(long)]
    pub seeds: Option<String>,
    /// Directory for `table.csv` and `table_summary.csv`; the table goes to
    /// standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Examples to run, e.g. `15,17`. All of 14-17 by default.
    #[arg(long)]
    pub examples: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output directory for `figureN.csv` and `figureN.svg`.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::new(2, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateSample(_) | Error::DegenerateBounds { .. } | Error::Window(_) => 4,
            Error::Spec(_) | Error::Argument(_) => 2,
            _ => 1,
        };
        Self::new(code, e.to_string())
    }
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::new(1, format!("{}: {e}", path.display()))
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Estimate(args) => cmd_estimate(&args, &mut out),
        Command::Simulate(args) => cmd_simulate(&args, &mut out),
        Command::Table(args) => cmd_table(&args, &mut out),
        Command::Figure(args) => cmd_figure(&args, &mut out),
    }
}

/// Formats with four significant digits.
pub fn sig4(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if magnitude < -4 {
        return format!("{x:.3e}");
    }
    let decimals = (3 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Observation and the 1-based line it came from.
type Observation = (f64, u64);

fn read_observations(path: &Path, column: Option<&str>) -> Result<Vec<Observation>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new(2, format!("cannot read {}: {e}", path.display())))?;
    match column {
        Some(name) => read_csv_column(&text, name, path),
        None => read_lines(&text, path),
    }
}

fn read_lines(text: &str, path: &Path) -> Result<Vec<Observation>, CliError> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i as u64 + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let v: f64 = trimmed.parse().map_err(|_| {
            CliError::usage(format!("{}:{line_no}: not a number: {trimmed:?}", path.display()))
        })?;
        values.push((v, line_no));
    }
    Ok(values)
}

fn read_csv_column(text: &str, name: &str, path: &Path) -> Result<Vec<Observation>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
        .clone();
    let index = headers.iter().position(|h| h == name).ok_or_else(|| {
        CliError::usage(format!("{}: no column named {name:?}", path.display()))
    })?;
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let line_no = record.position().map_or(0, |p| p.line());
        let field = record.get(index).unwrap_or("");
        let v: f64 = field.parse().map_err(|_| {
            CliError::usage(format!("{}:{line_no}: not a number: {field:?}", path.display()))
        })?;
        values.push((v, line_no));
    }
    Ok(values)
}

fn cmd_estimate(args: &EstimateArgs, out: &mut impl Write) -> Result<(), CliError> {
    let observations = read_observations(&args.input, args.column.as_deref())?;
    if let Some((v, line)) = observations.iter().find(|(v, _)| !(*v > 0.0 && v.is_finite())) {
        return Err(CliError::new(
            3,
            format!("{}:{line}: observation {v} is not a positive finite number", args.input.display()),
        ));
    }
    let total = observations.len();
    let xmin = args.xmin.unwrap_or(f64::NEG_INFINITY);
    let xmax = args.xmax.unwrap_or(f64::INFINITY);
    let kept: Vec<f64> = observations
        .into_iter()
        .map(|(v, _)| v)
        .filter(|v| (xmin..=xmax).contains(v))
        .collect();
    if kept.len() < 2 {
        return Err(CliError::new(
            4,
            format!("{} observation(s) inside [{xmin}, {xmax}]; need at least 2", kept.len()),
        ));
    }
    let dropped = total - kept.len();
    let sample = OrderedSample::new(kept)?;
    let window = match (args.l, args.r) {
        (Some(l), Some(r)) => {
            let w = TailWindow::new(l, r)?;
            w.check(&sample)?;
            w
        }
        _ => TailWindow::full(&sample),
    };

    let config = SolverConfig::default();
    let hill = hill_estimate(&sample, window.l)?;
    let improved = improved_estimate(&sample, window, &config)?;
    let iterative = solve_iterative(&sample, window, &config);

    let w = |e: io::Error| CliError::new(1, e.to_string());
    writeln!(out, "observations  {} ({dropped} dropped by --xmin/--xmax)", sample.len()).map_err(w)?;
    writeln!(out, "window        l = {}, r = {}, k = {}", window.l, window.r, window.size()).map_err(w)?;
    writeln!(
        out,
        "bounds        L = X_l = {}, R = X_r = {}",
        sig4(improved.window_low),
        sig4(improved.window_high)
    )
    .map_err(w)?;
    writeln!(out, "mean log      {}", sig4(improved.mean_log)).map_err(w)?;
    write_estimate(out, "hill", &hill).map_err(w)?;
    write_estimate(out, "improved", &improved).map_err(w)?;
    match iterative {
        Ok(it) => {
            writeln!(
                out,
                "iterative     mu = {} (alpha = {}), {} iterations, {}",
                sig4(it.mu),
                sig4(it.alpha),
                it.iterations,
                if it.converged { "converged" } else { "not converged" }
            )
            .map_err(w)?;
        }
        Err(e) => writeln!(out, "iterative     failed: {e}").map_err(w)?,
    }

    if let Some(path) = &args.plot {
        let series = hill_plot_series(&sample, window.r, &config)?;
        fs::write(path, report::series_csv(&series)).map_err(|e| io_error(path, e))?;
        eprintln!("wrote {} ({} points)", path.display(), series.len());
    }
    Ok(())
}

fn write_estimate(out: &mut impl Write, label: &str, e: &EstimateResult) -> io::Result<()> {
    writeln!(out, "{label:<13} mu = {} (alpha = {})", sig4(e.mu), sig4(e.alpha))
}

fn build_kind(args: &SimulateArgs) -> Result<DistributionKind, CliError> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::usage(format!("--dist {:?} requires --{flag}", args.dist)))
    };
    Ok(match args.dist {
        DistName::Power => DistributionKind::Power { mu: need(args.mu, "mu")? },
        DistName::Pade => DistributionKind::Pade14 {
            p2: args.p2.unwrap_or(PADE_P2),
            p4: args.p4.unwrap_or(PADE_P4),
        },
        DistName::Logx => DistributionKind::LogOverX,
        DistName::Invlogx => DistributionKind::InvXLogX,
        DistName::Sqrtinv => DistributionKind::SqrtInv,
        DistName::Growth => DistributionKind::PowerGrowth { exponent: -need(args.mu, "mu")? },
        DistName::Twopower => DistributionKind::TwoPower {
            a1: need(args.a1, "a1")?,
            mu1: need(args.mu1, "mu1")?,
            a2: need(args.a2, "a2")?,
            mu2: need(args.mu2, "mu2")?,
        },
    })
}

fn cmd_simulate(args: &SimulateArgs, out: &mut impl Write) -> Result<(), CliError> {
    let kind = build_kind(args)?;
    let spec = DistributionSpec::new(kind, args.dlow, args.dhigh, args.grid)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let grid = sampler::tabulate(&spec).map_err(|e| CliError::usage(e.to_string()))?;
    let request = SampleRequest::new(args.n, args.seed).map_err(|e| CliError::usage(e.to_string()))?;
    let sample = sampler::draw(&grid, request)?;

    let mut data = String::with_capacity(sample.len() * 20);
    for v in sample.values() {
        data.push_str(&v.to_string());
        data.push('\n');
    }
    let summary = format!(
        "{} draws from {} on [{}, {}], seed {}: sigma = {}, L = {}, R = {}",
        sample.len(),
        kind.label(),
        args.dlow,
        args.dhigh,
        args.seed,
        sig4(sampler::sigma_statistic(&sample)),
        sig4(sample.min()),
        sig4(sample.max())
    );
    let w = |e: io::Error| CliError::new(1, e.to_string());
    match &args.out {
        Some(path) => {
            fs::write(path, data).map_err(|e| io_error(path, e))?;
            writeln!(out, "{summary}").map_err(w)?;
        }
        None => {
            out.write_all(data.as_bytes()).map_err(w)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

/// Parses `1,3,5-7` into `[1, 3, 5, 6, 7]`.
pub fn parse_list(text: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| format!("bad range {part:?}"))?;
                let b: u64 = b.trim().parse().map_err(|_| format!("bad range {part:?}"))?;
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| format!("bad entry {part:?}"))?),
        }
    }
    if out.is_empty() {
        return Err(format!("empty list {text:?}"));
    }
    Ok(out)
}

fn parse_ids(text: Option<&str>, valid: &[usize], what: &str) -> Result<Vec<usize>, CliError> {
    let Some(text) = text else {
        return Ok(valid.to_vec());
    };
    let ids = parse_list(text).map_err(|e| CliError::usage(format!("--{what}: {e}")))?;
    ids.into_iter()
        .map(|id| {
            let id = id as usize;
            if valid.contains(&id) {
                Ok(id)
            } else {
                Err(CliError::usage(format!("--{what}: unknown id {id}")))
            }
        })
        .collect()
}

fn cmd_table(args: &TableArgs, out: &mut impl Write) -> Result<(), CliError> {
    let valid: Vec<usize> = experiments::TABLE_ROWS.iter().map(|r| r.row_id).collect();
    let rows = parse_ids(args.rows.as_deref(), &valid, "rows")?;
    let seeds = match &args.seeds {
        Some(s) => parse_list(s).map_err(|e| CliError::usage(format!("--seeds: {e}")))?,
        None => vec![1],
    };
    let results = experiments::run_table(&rows, &seeds)?;
    let table = report::table_csv(&results);
    let w = |e: io::Error| CliError::new(1, e.to_string());
    match &args.out {
        None => out.write_all(table.as_bytes()).map_err(w)?,
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
            let table_path = dir.join("table.csv");
            fs::write(&table_path, table).map_err(|e| io_error(&table_path, e))?;
            let summary = experiments::summarize(&results);
            let summary_path = dir.join("table_summary.csv");
            fs::write(&summary_path, report::summary_csv(&summary)).map_err(|e| io_error(&summary_path, e))?;
            writeln!(out, "row  runs  mu_input  mean mu_hill  mean mu_iter5").map_err(w)?;
            for s in &summary {
                writeln!(
                    out,
                    "{:>3}  {:>4}  {:>8}  {:>12}  {:>13}",
                    s.row_id,
                    s.runs,
                    format!("{}{}", if s.mu_input.approximate { "~" } else { "" }, s.mu_input.value),
                    sig4(s.mean_mu_hill),
                    sig4(s.mean_mu_iter5)
                )
                .map_err(w)?;
            }
            eprintln!("wrote {} and {}", table_path.display(), summary_path.display());
        }
    }
    Ok(())
}

fn cmd_figure(args: &FigureArgs, out: &mut impl Write) -> Result<(), CliError> {
    let valid: Vec<usize> = experiments::FIGURES.iter().map(|f| f.example_id).collect();
    let examples = parse_ids(args.examples.as_deref(), &valid, "examples")?;
    fs::create_dir_all(&args.out).map_err(|e| io_error(&args.out, e))?;
    let w = |e: io::Error| CliError::new(1, e.to_string());
    for example in examples {
        let fig = experiments::run_figure(example, args.seed)?;
        let stem = format!("figure{}", fig.figure_number);
        let csv_path = args.out.join(format!("{stem}.csv"));
        let svg_path = args.out.join(format!("{stem}.svg"));
        fs::write(&csv_path, report::series_csv(&fig.series)).map_err(|e| io_error(&csv_path, e))?;
        fs::write(&svg_path, report::figure_svg(&fig)).map_err(|e| io_error(&svg_path, e))?;
        writeln!(
            out,
            "example {example}: {} and {} (expected mu = {})",
            csv_path.display(),
            svg_path.display(),
            fig.expected_mu
        )
        .map_err(w)?;
    }
    Ok(())
}
