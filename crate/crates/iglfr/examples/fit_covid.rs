//! Full frequentist analysis of the bundled Covid-19 mortality data:
//! both point estimators, interval estimates, and goodness of fit.
//!
//! Run with `cargo run --example fit_covid`.

use iglfr::datasets;
use iglfr::fit::{asymptotic_cis, fit_mle, fit_mps, FitConfig, ParamName};
use iglfr::gof::ks_test;

fn main() -> iglfr::Result<()> {
    let data = datasets::builtin("covid")?;
    println!("{} ({} observations)\n", data.source, data.values.n());

    let config = FitConfig::default();
    let mle = fit_mle(&data.values, None, &config)?;
    let mps = fit_mps(&data.values, None, &config)?;

    println!("{:<8} {:>12} {:>12}", "", "MLE", "MPS");
    for (i, p) in ParamName::ALL.iter().enumerate() {
        println!(
            "{:<8} {:>12.4} {:>12.4}",
            p.to_string(),
            mle.params.as_array()[i],
            mps.params.as_array()[i]
        );
    }

    println!("\n95% asymptotic confidence intervals (MLE):");
    for ci in asymptotic_cis(&mle, 0.95)? {
        println!("  {:<6} ({:.4}, {:.4})", ci.parameter.to_string(), ci.lower, ci.upper);
    }

    let rep = ks_test(&data.values, &mle.params)?;
    println!(
        "\nK-S distance = {:.4}, p-value = {:.4} (n = {})",
        rep.ks_statistic, rep.p_value, rep.n
    );
    Ok(())
}
