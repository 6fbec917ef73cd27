//! Monte Carlo study harness: repeated sampling, all three estimators,
//! bias/MSE, interval lengths and coverage probabilities.
//!
//! Replications are embarrassingly parallel. Every replication derives
//! its randomness from the scenario seed through a dedicated ChaCha
//! stream keyed by (sample-size index, replication index), so reports are
//! bit-identical regardless of thread scheduling.

use crate::bayes::{self, McmcConfig, PriorSpec};
use crate::dist;
use crate::error::{Error, Result};
use crate::fit::{self, FitConfig, ParamName};
use crate::params::Params;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Estimators the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Mle,
    Mps,
    Bayes,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mle" => Ok(Method::Mle),
            "mps" => Ok(Method::Mps),
            "bayes" => Ok(Method::Bayes),
            other => Err(Error::InvalidConfig(format!(
                "unknown method '{other}' (mle, mps, bayes)"
            ))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Mle => write!(f, "mle"),
            Method::Mps => write!(f, "mps"),
            Method::Bayes => write!(f, "bayes"),
        }
    }
}

/// Full description of one Monte Carlo study.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulationScenario {
    pub truth: Params,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    /// Priors for the Bayes runs; `None` uses shape-2 priors centred at
    /// the truth. Recorded in the report either way.
    pub prior: Option<PriorSpec>,
    /// Per-replication chain length (kept deliberately smaller than
    /// data-analysis runs).
    pub mcmc_iterations: usize,
    pub mcmc_burn_in: usize,
    /// Interval confidence level.
    pub level: f64,
}

impl SimulationScenario {
    pub fn new(truth: Params, sample_sizes: Vec<usize>, replications: usize, seed: u64) -> Self {
        Self {
            truth,
            sample_sizes,
            replications,
            seed,
            methods: vec![Method::Mle, Method::Mps],
            prior: None,
            mcmc_iterations: 5000,
            mcmc_burn_in: 1000,
            level: 0.95,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidConfig("replications must be >= 1".into()));
        }
        if self.sample_sizes.iter().any(|&n| n < 5) {
            return Err(Error::InvalidConfig("sample sizes must be >= 5".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("no methods selected".into()));
        }
        if !(0.0 < self.level && self.level < 1.0) {
            return Err(Error::InvalidConfig("level must lie in (0,1)".into()));
        }
        if self.mcmc_burn_in >= self.mcmc_iterations {
            return Err(Error::InvalidConfig("mcmc burn-in must be < iterations".into()));
        }
        Ok(())
    }

    fn effective_prior(&self) -> Result<PriorSpec> {
        match self.prior {
            Some(p) => Ok(p),
            None => PriorSpec::truth_anchored(&self.truth),
        }
    }
}

/// One aggregated table cell.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Cell {
    pub n: usize,
    pub method: Method,
    pub parameter: ParamName,
    pub bias: f64,
    pub mse: f64,
    pub avg_length: f64,
    pub coverage: f64,
    /// Non-converged replications for this (n, method), excluded from
    /// the aggregates above.
    pub failures: usize,
}

/// Aggregated study results plus the configuration that produced them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulationReport {
    pub scenario: SimulationScenario,
    /// Hyperparameters actually used for the Bayes runs.
    pub prior_used: PriorSpec,
    pub cells: Vec<Cell>,
}

impl SimulationReport {
    pub fn cell(&self, n: usize, method: Method, parameter: ParamName) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.n == n && c.method == method && c.parameter == parameter)
    }

    /// CSV layout: one row per n, column groups method × parameter with
    /// paired bias/MSE and the interval metrics.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let mut header = vec!["n".to_string()];
        for m in &self.scenario.methods {
            for p in ParamName::ALL {
                header.push(format!("{m}_{p}_bias"));
                header.push(format!("{m}_{p}_mse"));
                header.push(format!("{m}_{p}_avg_length"));
                header.push(format!("{m}_{p}_coverage"));
            }
        }
        writeln!(out, "{}", header.join(","))?;
        for &n in &self.scenario.sample_sizes {
            let mut row = vec![n.to_string()];
            for &m in &self.scenario.methods {
                for p in ParamName::ALL {
                    let c = self.cell(n, m, p).expect("cell for configured grid");
                    row.push(format!("{:.16e}", c.bias));
                    row.push(format!("{:.16e}", c.mse));
                    row.push(format!("{:.16e}", c.avg_length));
                    row.push(format!("{:.16e}", c.coverage));
                }
            }
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::InvalidConfig(format!("report serialization failed: {e}")))
    }
}

// per-replication, per-method outcome; intervals can be unavailable even
// when the point estimate converged (non-PD curvature on a small sample)
struct RepOutcome {
    est: [f64; 3],
    interval: Option<([f64; 3], [f64; 3])>,
}

fn run_rep(
    sc: &SimulationScenario,
    prior: &PriorSpec,
    n_index: usize,
    n: usize,
    rep: usize,
) -> Vec<Option<RepOutcome>> {
    let mut rng = ChaCha12Rng::seed_from_u64(sc.seed);
    rng.set_stream(((n_index as u64) << 32) | rep as u64);
    let sample = dist::sample_with(&sc.truth, n, &mut rng);
    let config = FitConfig::default();

    let needs_mle = sc
        .methods
        .iter()
        .any(|m| matches!(m, Method::Mle | Method::Bayes));
    let mle = if needs_mle {
        fit::fit_mle(&sample, None, &config).ok().filter(|f| f.converged)
    } else {
        None
    };

    sc.methods
        .iter()
        .map(|&m| match m {
            Method::Mle => {
                let f = mle.as_ref()?;
                let interval = fit::asymptotic_cis(f, sc.level)
                    .ok()
                    .map(|cis| (cis.map(|c| c.lower), cis.map(|c| c.upper)));
                Some(RepOutcome {
                    est: f.params.as_array(),
                    interval,
                })
            }
            Method::Mps => {
                let f = fit::fit_mps(&sample, None, &config).ok().filter(|f| f.converged)?;
                let interval = fit::asymptotic_cis(&f, sc.level)
                    .ok()
                    .map(|cis| (cis.map(|c| c.lower), cis.map(|c| c.upper)));
                Some(RepOutcome {
                    est: f.params.as_array(),
                    interval,
                })
            }
            Method::Bayes => {
                let f = mle.as_ref()?;
                // proposal scales from the per-replication fit (falling
                // back to the estimate scale when a variance is degenerate)
                let est = f.params.as_array();
                let mut sds = f.std_errors;
                for j in 0..3 {
                    if !(sds[j].is_finite() && sds[j] > 0.0) {
                        sds[j] = 0.5 * est[j].abs().max(1e-6);
                    }
                }
                let mcmc_seed = sc
                    .seed
                    .wrapping_add(0x9e37_79b9_7f4a_7c15)
                    .wrapping_mul(((n_index as u64) << 32) | (rep as u64 + 1));
                let cfg = McmcConfig::new(sc.mcmc_iterations, sc.mcmc_burn_in, mcmc_seed, sds).ok()?;
                let chain = bayes::run_mcmc(&sample, prior, &cfg, &f.params);
                let estp = bayes::bayes_estimates_self(&chain).ok()?;
                let interval = bayes::credible_intervals(&chain, sc.level)
                    .ok()
                    .map(|cis| (cis.map(|c| c.lower), cis.map(|c| c.upper)));
                Some(RepOutcome {
                    est: estp.as_array(),
                    interval,
                })
            }
        })
        .collect()
}

/// Runs the full study. Deterministic for a fixed scenario (seed
/// included); replications run in parallel with order-independent
/// aggregation.
pub fn run_scenario(sc: &SimulationScenario) -> Result<SimulationReport> {
    sc.validate()?;
    let prior = sc.effective_prior()?;
    let truth = sc.truth.as_array();
    let mut cells = Vec::new();

    for (n_index, &n) in sc.sample_sizes.iter().enumerate() {
        let outcomes: Vec<Vec<Option<RepOutcome>>> = (0..sc.replications)
            .into_par_iter()
            .map(|rep| run_rep(sc, &prior, n_index, n, rep))
            .collect();

        for (mi, &method) in sc.methods.iter().enumerate() {
            let done: Vec<&RepOutcome> =
                outcomes.iter().filter_map(|reps| reps[mi].as_ref()).collect();
            let failures = sc.replications - done.len();
            let k = done.len().max(1) as f64;
            for (pi, parameter) in ParamName::ALL.into_iter().enumerate() {
                let bias = done.iter().map(|o| o.est[pi] - truth[pi]).sum::<f64>() / k;
                let mse = done
                    .iter()
                    .map(|o| (o.est[pi] - truth[pi]).powi(2))
                    .sum::<f64>()
                    / k;
                let with_ci: Vec<&([f64; 3], [f64; 3])> =
                    done.iter().filter_map(|o| o.interval.as_ref()).collect();
                let ci_k = with_ci.len().max(1) as f64;
                let avg_length = with_ci
                    .iter()
                    .map(|(lo, up)| up[pi] - lo[pi])
                    .sum::<f64>()
                    / ci_k;
                let coverage = with_ci
                    .iter()
                    .filter(|(lo, up)| lo[pi] <= truth[pi] && truth[pi] <= up[pi])
                    .count() as f64
                    / ci_k;
                cells.push(Cell {
                    n,
                    method,
                    parameter,
                    bias,
                    mse,
                    avg_length,
                    coverage,
                    failures,
                });
            }
        }
    }
    Ok(SimulationReport {
        scenario: sc.clone(),
        prior_used: prior,
        cells,
    })
}

/// Rankings per (n, parameter); rank 1 is best, ties share a rank.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub parameter: ParamName,
    pub mse_ranks: Vec<(Method, usize)>,
    pub bias_ranks: Vec<(Method, usize)>,
}

/// Method ranking across every (n, parameter) cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    /// Cells in which each method attains rank 1 by MSE.
    pub mse_wins: Vec<(Method, usize)>,
    /// Cells in which each method attains rank 1 by |bias|.
    pub bias_wins: Vec<(Method, usize)>,
}

fn rank(values: &[(Method, f64)]) -> Vec<(Method, usize)> {
    values
        .iter()
        .map(|&(m, v)| {
            let better = values.iter().filter(|&&(_, w)| w < v).count();
            (m, better + 1)
        })
        .collect()
}

/// Ranks methods by MSE and absolute bias in every cell and counts wins.
pub fn compare_methods(report: &SimulationReport) -> Result<ComparisonReport> {
    let methods = &report.scenario.methods;
    if methods.len() < 2 {
        return Err(Error::InvalidConfig(
            "method comparison needs at least two methods".into(),
        ));
    }
    let mut rows = Vec::new();
    let mut mse_wins: Vec<(Method, usize)> = methods.iter().map(|&m| (m, 0)).collect();
    let mut bias_wins: Vec<(Method, usize)> = methods.iter().map(|&m| (m, 0)).collect();
    for &n in &report.scenario.sample_sizes {
        for parameter in ParamName::ALL {
            let mse: Vec<(Method, f64)> = methods
                .iter()
                .map(|&m| (m, report.cell(n, m, parameter).expect("cell").mse))
                .collect();
            let bias: Vec<(Method, f64)> = methods
                .iter()
                .map(|&m| {
                    (m, report.cell(n, m, parameter).expect("cell").bias.abs())
                })
                .collect();
            let mse_ranks = rank(&mse);
            let bias_ranks = rank(&bias);
            for (i, &(_, r)) in mse_ranks.iter().enumerate() {
                if r == 1 {
                    mse_wins[i].1 += 1;
                }
            }
            for (i, &(_, r)) in bias_ranks.iter().enumerate() {
                if r == 1 {
                    bias_wins[i].1 += 1;
                }
            }
            rows.push(ComparisonRow {
                n,
                parameter,
                mse_ranks,
                bias_ranks,
            });
        }
    }
    Ok(ComparisonReport {
        rows,
        mse_wins,
        bias_wins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn truth() -> Params {
        Params::new(0.5, 0.5, 1.0).unwrap()
    }

    #[test]
    fn unit_replication_equals_hand_driven_fit() {
        let mut sc = SimulationScenario::new(truth(), vec![40], 1, 2024);
        sc.methods = vec![Method::Mle];
        let report = run_scenario(&sc).unwrap();

        // drive the same replication by hand
        let mut rng = ChaCha12Rng::seed_from_u64(2024);
        rng.set_stream(0);
        let s = dist::sample_with(&truth(), 40, &mut rng);
        let f = fit::fit_mle(&s, None, &FitConfig::default()).unwrap();
        let cis = fit::asymptotic_cis(&f, 0.95).unwrap();
        for (pi, p) in ParamName::ALL.into_iter().enumerate() {
            let c = report.cell(40, Method::Mle, p).unwrap();
            assert_relative_eq!(
                c.bias,
                f.params.as_array()[pi] - truth().as_array()[pi],
                max_relative = 1e-12
            );
            assert_relative_eq!(
                c.avg_length,
                cis[pi].upper - cis[pi].lower,
                max_relative = 1e-12
            );
            assert_eq!(c.failures, 0);
        }
    }

    #[test]
    fn reports_are_deterministic_and_mse_dominates_bias_squared() {
        let mut sc = SimulationScenario::new(truth(), vec![20], 30, 7);
        sc.methods = vec![Method::Mle, Method::Mps];
        let r1 = run_scenario(&sc).unwrap();
        let r2 = run_scenario(&sc).unwrap();
        for (a, b) in r1.cells.iter().zip(&r2.cells) {
            assert_eq!(a.bias.to_bits(), b.bias.to_bits());
            assert_eq!(a.mse.to_bits(), b.mse.to_bits());
        }
        for c in &r1.cells {
            assert!(c.mse + 1e-12 >= c.bias * c.bias);
            assert!((0.0..=1.0).contains(&c.coverage));
        }
    }

    #[test]
    fn rng_streams_give_unbiased_sample_means() {
        // harness self-test on a distribution with a known mean: the
        // inverse-Rayleigh member (0, 2, 1) has E[X] = sqrt(π)
        let p = Params::new(0.0, 2.0, 1.0).unwrap();
        let reps = 400;
        let n = 50;
        let mut means = Vec::with_capacity(reps);
        for rep in 0..reps {
            let mut rng = ChaCha12Rng::seed_from_u64(99);
            rng.set_stream(rep as u64);
            let s = dist::sample_with(&p, n, &mut rng);
            means.push(s.values().iter().sum::<f64>() / n as f64);
        }
        let grand = means.iter().sum::<f64>() / reps as f64;
        let var = means.iter().map(|m| (m - grand).powi(2)).sum::<f64>() / (reps - 1) as f64;
        let se = (var / reps as f64).sqrt();
        let target = std::f64::consts::PI.sqrt();
        assert!(
            (grand - target).abs() < 3.0 * se,
            "grand mean {grand} vs {target} (3se = {})",
            3.0 * se
        );
    }

    #[test]
    fn streams_do_not_collide() {
        let mut a = ChaCha12Rng::seed_from_u64(5);
        a.set_stream(0);
        let mut b = ChaCha12Rng::seed_from_u64(5);
        b.set_stream(1);
        let xa: Vec<f64> = (0..16).map(|_| a.gen()).collect();
        let xb: Vec<f64> = (0..16).map(|_| b.gen()).collect();
        assert_ne!(xa, xb);
    }

    #[test]
    fn comparison_handles_ties_and_counts_wins() {
        let mut sc = SimulationScenario::new(truth(), vec![20], 10, 3);
        sc.methods = vec![Method::Mle, Method::Mps];
        let mut report = run_scenario(&sc).unwrap();
        // force identical columns: tied ranks everywhere
        let mle_cells: Vec<Cell> = report
            .cells
            .iter()
            .filter(|c| c.method == Method::Mle)
            .copied()
            .collect();
        for c in report.cells.iter_mut() {
            if c.method == Method::Mps {
                let twin = mle_cells
                    .iter()
                    .find(|m| m.n == c.n && m.parameter == c.parameter)
                    .unwrap();
                c.mse = twin.mse;
                c.bias = twin.bias;
            }
        }
        let cmp = compare_methods(&report).unwrap();
        for row in &cmp.rows {
            assert!(row.mse_ranks.iter().all(|&(_, r)| r == 1));
        }
        let total: usize = cmp.mse_wins.iter().map(|&(_, w)| w).sum();
        assert_eq!(total, 2 * cmp.rows.len()); // both tied at rank 1 in every row

        let single = SimulationScenario::new(truth(), vec![20], 2, 3);
        let mut single = single;
        single.methods = vec![Method::Mle];
        let rep = run_scenario(&single).unwrap();
        assert!(compare_methods(&rep).is_err());
    }

    #[test]
    fn scenario_validation() {
        let mut sc = SimulationScenario::new(truth(), vec![4], 10, 1);
        assert!(run_scenario(&sc).is_err()); // n < 5
        sc.sample_sizes = vec![20];
        sc.replications = 0;
        assert!(run_scenario(&sc).is_err());
        sc.replications = 2;
        sc.level = 1.5;
        assert!(run_scenario(&sc).is_err());
    }

    #[test]
    fn csv_layout_matches_grid() {
        let mut sc = SimulationScenario::new(truth(), vec![20, 30], 5, 11);
        sc.methods = vec![Method::Mle];
        let report = run_scenario(&sc).unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3); // header + one row per n
        assert!(lines[0].starts_with("n,mle_alpha_bias,mle_alpha_mse"));
        let json = report.to_json().unwrap();
        assert!(json.contains("\"prior_used\""));
    }
}
