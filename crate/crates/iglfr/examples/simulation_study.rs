//! Desk-scale Monte Carlo study: bias, MSE, interval length, and coverage
//! for all three estimators, with the method comparison table.
//!
//! Uses 200 replications to stay quick; raise `replications` (the
//! reference protocol uses 10,000) for publication-grade numbers.
//!
//! Run with `cargo run --release --example simulation_study`.

use iglfr::params::Params;
use iglfr::sim::{compare_methods, run_scenario, Method, SimulationScenario};

fn main() -> iglfr::Result<()> {
    let truth = Params::new(0.5, 0.5, 1.0)?;
    let mut scenario = SimulationScenario::new(truth, vec![20, 50], 200, 2024);
    scenario.methods = vec![Method::Mle, Method::Mps, Method::Bayes];

    let report = run_scenario(&scenario)?;
    println!(
        "truth = {:?}, {} replications, priors: shapes ({}, {}, {}) anchored at truth\n",
        truth.as_array(),
        scenario.replications,
        report.prior_used.alpha_shape,
        report.prior_used.beta_shape,
        report.prior_used.theta_shape,
    );

    println!(
        "{:>4} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>9}",
        "n", "method", "parameter", "bias", "mse", "avg_len", "coverage", "failures"
    );
    for cell in &report.cells {
        println!(
            "{:>4} {:>6} {:>10} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>9}",
            cell.n,
            cell.method.to_string(),
            cell.parameter.to_string(),
            cell.bias,
            cell.mse,
            cell.avg_length,
            cell.coverage,
            cell.failures
        );
    }

    let cmp = compare_methods(&report)?;
    println!("\nrank-1 counts by MSE:");
    for (m, wins) in &cmp.mse_wins {
        println!("  {m}: {wins} of {} cells", cmp.rows.len());
    }

    let out = std::env::temp_dir().join("iglfr_simulation.csv");
    report.write_csv(std::fs::File::create(&out)?)?;
    println!("\ntable written to {}", out.display());
    Ok(())
}
