use tailindex::experiments::{run_figure, run_table_row};
use tailindex::sampler::{draw, sigma_statistic, tabulate, DistributionKind, DistributionSpec, SampleRequest};
use tailindex::estimator::{hill_estimate, improved_estimate, solve_iterative};
use tailindex::{OrderedSample, SolverConfig, TailWindow};

fn power_draw(mu: f64, low: f64, high: f64, grid: usize, n: usize, seed: u64) -> OrderedSample {
    let spec = DistributionSpec::new(DistributionKind::Power { mu }, low, high, grid).unwrap();
    draw(&tabulate(&spec).unwrap(), SampleRequest::new(n, seed).unwrap()).unwrap()
}

#[test]
fn grid_refinement_moves_draws_less_than_a_cell() {
    let coarse_spec = DistributionSpec::new(DistributionKind::Power { mu: 5.0 }, 3.0, 150.0, 5000).unwrap();
    let spacing = tabulate(&coarse_spec).unwrap().spacing();
    let coarse = power_draw(5.0, 3.0, 150.0, 5000, 2000, 4);
    let fine = power_draw(5.0, 3.0, 150.0, 10_000, 2000, 4);
    for (a, b) in coarse.values().iter().zip(fine.values()) {
        assert!((a - b).abs() < spacing, "{a} vs {b}");
    }
}

#[test]
fn extremes_approach_bounds() {
    let s = power_draw(1.5, 2.0, 5.0, 10_000, 20_000, 9);
    assert!(s.min() - 2.0 < 0.01, "{}", s.min());
    assert!(5.0 - s.max() < 0.1, "{}", s.max());
}

#[test]
fn sigma_matches_reference_rows() {
    let mean = |row: usize| (1..=10).map(|seed| run_table_row(row, seed).unwrap().sigma).sum::<f64>() / 10.0;
    let s1 = mean(1);
    let s6 = mean(6);
    assert!((s1 - 1.339).abs() < 0.05, "row 1 sigma {s1}");
    assert!((s6 - 7.682).abs() < 0.2, "row 6 sigma {s6}");
}

#[test]
fn improved_estimate_tends_to_hill_as_upper_bound_grows() {
    let config = SolverConfig::default();
    let mut gaps = Vec::new();
    for high in [4.0, 30.0, 1e4] {
        let s = power_draw(3.0, 3.0, high, 10_000, 4000, 21);
        let window = TailWindow::full(&s);
        let hill = hill_estimate(&s, s.len()).unwrap().mu;
        let improved = improved_estimate(&s, window, &config).unwrap().mu;
        gaps.push((hill - improved).abs());
    }
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    assert!(gaps[2] < 0.05, "{gaps:?}");
}

#[test]
fn reference_estimates_are_reproduced_on_average() {
    let runs: Vec<_> = (1..=10).map(|seed| run_table_row(1, seed).unwrap()).collect();
    let hill = runs.iter().map(|r| r.mu_hill).sum::<f64>() / 10.0;
    assert!((hill - 5.157).abs() < 0.3, "row 1 hill {hill}");
    let runs: Vec<_> = (1..=10).map(|seed| run_table_row(13, seed).unwrap()).collect();
    let iter = runs.iter().map(|r| r.mu_iter5).sum::<f64>() / 10.0;
    assert!((iter + 3.503).abs() < 0.25, "row 13 iterative {iter}");
}

#[test]
fn order_of_input_does_not_matter() {
    let s = power_draw(2.0, 1.0, 10.0, 10_000, 500, 3);
    let mut shuffled = s.values().to_vec();
    shuffled.reverse();
    shuffled.swap(0, 250);
    let t = OrderedSample::new(shuffled).unwrap();
    let config = SolverConfig::default();
    let a = solve_iterative(&s, TailWindow::full(&s), &config).unwrap();
    let b = solve_iterative(&t, TailWindow::full(&t), &config).unwrap();
    assert_eq!(a.mu, b.mu);
    assert_eq!(sigma_statistic(&s), sigma_statistic(&t));
}

#[test]
fn logarithmic_example_stays_between_hill_and_one() {
    let fig = run_figure(16, 1).unwrap();
    let (hill, improved) = fig.mean_over(9000..=10_000);
    assert!(improved < hill, "{improved} vs {hill}");
    assert!(improved > 0.5 && improved < 1.2, "{improved}");
}

#[test]
fn pade_example_improved_is_near_four_over_full_window() {
    let fig = run_figure(14, 1).unwrap();
    let last = fig.series.points.last().unwrap();
    let improved = last.mu_improved.unwrap();
    let hill = last.mu_hill.unwrap();
    assert!((improved - 4.0).abs() < (hill - 4.0).abs(), "{improved} vs {hill}");
}
