//! Goodness-of-fit workflow: K-S test plus the five plot-data tables
//! (ECDF, P-P, Q-Q, density/histogram, TTT) written as CSV files.
//!
//! Run with `cargo run --example goodness_of_fit`.

use iglfr::datasets;
use iglfr::fit::{fit_mle, FitConfig};
use iglfr::gof::{ks_test, plot_data, Ecdf, PlotKind};

fn main() -> iglfr::Result<()> {
    let data = datasets::builtin("covid")?;
    let fit = fit_mle(&data.values, None, &FitConfig::default())?;

    let rep = ks_test(&data.values, &fit.params)?;
    println!(
        "fitted ({:.4}, {:.4}, {:.4}): K-S = {:.4}, p = {:.4}",
        fit.params.alpha(),
        fit.params.beta(),
        fit.params.theta(),
        rep.ks_statistic,
        rep.p_value
    );

    let ecdf = Ecdf::new(&data.values)?;
    println!("empirical CDF at 3.0: {:.4}", ecdf.query(3.0));

    let dir = std::env::temp_dir();
    for kind in [
        PlotKind::Ecdf,
        PlotKind::Pp,
        PlotKind::Qq,
        PlotKind::Density,
        PlotKind::Ttt,
    ] {
        let table = plot_data(&fit.params, &data.values, kind)?;
        let path = dir.join(format!("iglfr_covid_{kind}.csv"));
        table.write_csv(std::fs::File::create(&path)?)?;
        println!("{} rows of {kind} data -> {}", table.rows.len(), path.display());
    }
    Ok(())
}
