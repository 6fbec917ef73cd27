//! Batch front end: every library operation behind one subcommand each.
//!
//! Exit codes: 0 success, 1 input error, 2 non-convergence, 3 internal
//! numerical failure.

use clap::{Args, Parser, Subcommand};
use iglfr::bayes::{self, McmcConfig, PriorSpec, DEFAULT_DATA_SHAPES};
use iglfr::datasets::{self, DataFormat};
use iglfr::dist;
use iglfr::error::Error;
use iglfr::fit::{self, ConfidenceInterval, FitConfig, FitResult, ObservedSample, ParamName};
use iglfr::gof::{self, PlotKind};
use iglfr::params::{Params, QuantileLevel};
use iglfr::sim::{self, Method, SimulationScenario};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "iglfr",
    about = "Inverse generalized linear failure rate distribution: fitting, goodness of fit, simulation studies, and function evaluation",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fit the distribution by MLE, MPS, and/or Bayesian MCMC
    Fit(FitArgs),
    /// Kolmogorov-Smirnov goodness of fit against a fitted or given model
    Gof(GofArgs),
    /// Monte Carlo study of estimator bias, MSE, interval length, coverage
    Simulate(SimArgs),
    /// Tabulate a distribution function on a grid
    Eval(EvalArgs),
    /// Draw a random sample by inversion
    Sample(SampleArgs),
    /// Emit plot-ready diagnostic tables (ECDF, P-P, Q-Q, density, TTT)
    Plotdata(PlotArgs),
}

#[derive(Args)]
struct DataOpt {
    /// Data source: builtin:flood, builtin:covid, or a file path
    #[arg(long)]
    data: String,
    /// Read this zero-based CSV column instead of whitespace-split values
    #[arg(long)]
    csv_column: Option<usize>,
}

impl DataOpt {
    fn load(&self) -> Result<ObservedSample, Error> {
        if let Some(name) = self.data.strip_prefix("builtin:") {
            return Ok(datasets::builtin(name)?.values);
        }
        let format = match self.csv_column {
            Some(column) => DataFormat::Csv { column },
            None => DataFormat::Whitespace,
        };
        Ok(datasets::load(&PathBuf::from(&self.data), format)?.values)
    }
}

#[derive(Args)]
struct OutOpt {
    /// Output format
    #[arg(long, default_value = "table", value_parser = ["table", "csv", "json"])]
    format: String,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutOpt {
    fn write(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, text)?;
                Ok(())
            }
            None => {
                print!("{text}");
                std::io::stdout().flush()?;
                Ok(())
            }
        }
    }
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    data: DataOpt,
    /// Estimator; repeat for several (mle, mps, bayes)
    #[arg(long = "method", required = true)]
    methods: Vec<String>,
    /// Starting point a,b,t (defaults to a method-of-quantiles seed)
    #[arg(long)]
    init: Option<String>,
    /// Confidence / credible level
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    /// Gamma prior hyperparameters a,b,c,d,p,q (shape,scale per parameter);
    /// defaults to MLE-anchored shapes 200,2,30
    #[arg(long)]
    prior: Option<String>,
    /// MCMC chain length
    #[arg(long = "mcmc-k", default_value_t = 50_000)]
    mcmc_k: usize,
    /// Draws discarded before estimation (default: 20% of the chain)
    #[arg(long = "burn-in")]
    burn_in: Option<usize>,
    /// RNG seed for the MCMC chain
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct GofArgs {
    #[command(flatten)]
    data: DataOpt,
    /// Fit this estimator first (mle or mps)
    #[arg(long)]
    fit: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct SimArgs {
    /// True parameters a,b,t
    #[arg(long)]
    truth: String,
    /// Sample sizes, comma separated
    #[arg(long, default_value = "20,50,100")]
    sizes: String,
    /// Monte Carlo replications
    #[arg(long, default_value_t = 1000)]
    reps: usize,
    /// Methods, comma separated (mle,mps,bayes)
    #[arg(long, default_value = "mle,mps")]
    methods: String,
    /// Gamma prior a,b,c,d,p,q for Bayes (default: truth-anchored shape 2)
    #[arg(long)]
    prior: Option<String>,
    #[arg(long = "mcmc-k", default_value_t = 5_000)]
    mcmc_k: usize,
    #[arg(long = "burn-in", default_value_t = 1_000)]
    burn_in: usize,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Worker threads for replications (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct EvalArgs {
    /// Function: pdf, cdf, survival, hazard, reversed-hazard, odd, quantile
    #[arg(long = "fn")]
    function: String,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    theta: f64,
    /// Grid lo:hi:count (quantile levels must stay inside (0,1))
    #[arg(long)]
    grid: String,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    theta: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    data: DataOpt,
    /// ecdf, pp, qq, density, or ttt
    #[arg(long)]
    kind: String,
    /// Fit this estimator for the model curve (mle or mps)
    #[arg(long)]
    fit: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[command(flatten)]
    out: OutOpt,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap's help/version paths exit cleanly
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let run = match cli.cmd {
        Cmd::Fit(a) => cmd_fit(a),
        Cmd::Gof(a) => cmd_gof(a),
        Cmd::Simulate(a) => cmd_simulate(a),
        Cmd::Eval(a) => cmd_eval(a),
        Cmd::Sample(a) => cmd_sample(a),
        Cmd::Plotdata(a) => cmd_plotdata(a),
    };
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NonConvergence { .. } => 2,
        Error::Overflow(_)
        | Error::QuadratureNonConvergence { .. }
        | Error::RootNotBracketed { .. }
        | Error::SingularInformation
        | Error::MomentDoesNotExist { .. } => 3,
        _ => 1,
    }
}

fn parse_triple(s: &str) -> Result<Params, Error> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::InvalidConfig(format!(
            "expected a,b,t with three values, got '{s}'"
        )));
    }
    let mut v = [0.0; 3];
    for (i, p) in parts.iter().enumerate() {
        v[i] = p
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("not a number: '{p}'")))?;
    }
    Params::new(v[0], v[1], v[2])
}

fn parse_prior(s: &str) -> Result<PriorSpec, Error> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("not a number: '{p}'")))
        })
        .collect::<Result<_, _>>()?;
    if parts.len() != 6 {
        return Err(Error::InvalidConfig(format!(
            "expected a,b,c,d,p,q with six values, got {}",
            parts.len()
        )));
    }
    PriorSpec::new(parts[0], parts[1], parts[2], parts[3], parts[4], parts[5])
}

fn require_convergence(f: &FitResult) -> Result<(), Error> {
    if f.converged {
        Ok(())
    } else {
        Err(Error::NonConvergence {
            iterations: f.iterations,
            gradient_norm: f.gradient_norm,
        })
    }
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct MethodReport {
    method: String,
    estimates: [f64; 3],
    std_errors: Option<[f64; 3]>,
    intervals: Option<[ConfidenceInterval; 3]>,
    objective: Option<f64>,
    iterations: Option<usize>,
    acceptance_rates: Option<[f64; 3]>,
    prior: Option<PriorSpec>,
    interval_kind: String,
}

#[derive(Serialize)]
struct FitOutput {
    data_n: usize,
    level: f64,
    reports: Vec<MethodReport>,
}

fn cmd_fit(a: FitArgs) -> Result<(), Error> {
    let s = a.data.load()?;
    let init = a.init.as_deref().map(parse_triple).transpose()?;
    let config = FitConfig::default();
    let mut reports = Vec::new();

    let wants = |name: &str| a.methods.iter().any(|m| m.eq_ignore_ascii_case(name));
    for m in &a.methods {
        if !["mle", "mps", "bayes"].contains(&m.to_ascii_lowercase().as_str()) {
            return Err(Error::InvalidConfig(format!(
                "unknown method '{m}' (mle, mps, bayes)"
            )));
        }
    }

    let mle = if wants("mle") || wants("bayes") {
        let f = fit::fit_mle(&s, init, &config)?;
        require_convergence(&f)?;
        Some(f)
    } else {
        None
    };

    if wants("mle") {
        let f = mle.as_ref().expect("fitted above");
        reports.push(MethodReport {
            method: "mle".into(),
            estimates: f.params.as_array(),
            std_errors: Some(f.std_errors),
            intervals: fit::asymptotic_cis(f, a.level).ok(),
            objective: Some(f.objective),
            iterations: Some(f.iterations),
            acceptance_rates: None,
            prior: None,
            interval_kind: "asymptotic".into(),
        });
    }
    if wants("mps") {
        let f = fit::fit_mps(&s, init, &config)?;
        require_convergence(&f)?;
        reports.push(MethodReport {
            method: "mps".into(),
            estimates: f.params.as_array(),
            std_errors: Some(f.std_errors),
            intervals: fit::asymptotic_cis(&f, a.level).ok(),
            objective: Some(f.objective),
            iterations: Some(f.iterations),
            acceptance_rates: None,
            prior: None,
            interval_kind: "asymptotic".into(),
        });
    }
    if wants("bayes") {
        let f = mle.as_ref().expect("fitted above");
        let prior = match a.prior.as_deref() {
            Some(text) => parse_prior(text)?,
            None => PriorSpec::anchored(&f.params, DEFAULT_DATA_SHAPES)?,
        };
        let burn = a.burn_in.unwrap_or(a.mcmc_k / 5);
        let config = McmcConfig::new(a.mcmc_k, burn, a.seed, f.std_errors)?;
        let chain = bayes::run_mcmc(&s, &prior, &config, &f.params);
        let est = bayes::bayes_estimates_self(&chain)?;
        let bci = bayes::credible_intervals(&chain, a.level)?;
        reports.push(MethodReport {
            method: "bayes".into(),
            estimates: est.as_array(),
            std_errors: None,
            intervals: Some(bci),
            objective: None,
            iterations: Some(a.mcmc_k),
            acceptance_rates: Some(chain.acceptance_rates()),
            prior: Some(prior),
            interval_kind: "credible-shortest".into(),
        });
    }

    let output = FitOutput {
        data_n: s.n(),
        level: a.level,
        reports,
    };
    let text = match a.out.format.as_str() {
        "json" => serde_json::to_string_pretty(&output)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            + "\n",
        "csv" => {
            let mut t = String::from("method,parameter,estimate,std_error,lower,upper\n");
            for r in &output.reports {
                for (i, p) in ParamName::ALL.iter().enumerate() {
                    let se = r
                        .std_errors
                        .map_or(String::new(), |s| format!("{:.16e}", s[i]));
                    let (lo, hi) = r.intervals.as_ref().map_or((String::new(), String::new()), |c| {
                        (format!("{:.16e}", c[i].lower), format!("{:.16e}", c[i].upper))
                    });
                    t += &format!(
                        "{},{},{:.16e},{},{},{}\n",
                        r.method, p, r.estimates[i], se, lo, hi
                    );
                }
            }
            t
        }
        _ => {
            let mut t = format!("n = {}\n", output.data_n);
            for r in &output.reports {
                t += &format!("\n[{}]\n", r.method);
                for (i, p) in ParamName::ALL.iter().enumerate() {
                    t += &format!("  {:<6} {:>12.4}", p.to_string(), r.estimates[i]);
                    if let Some(se) = r.std_errors {
                        t += &format!("  se {:>10.4}", se[i]);
                    }
                    if let Some(ci) = &r.intervals {
                        t += &format!(
                            "  {:.0}% ({:.4}, {:.4})",
                            100.0 * a.level,
                            ci[i].lower,
                            ci[i].upper
                        );
                    }
                    t.push('\n');
                }
                if let Some(obj) = r.objective {
                    t += &format!("  objective {obj:.4}\n");
                }
                if let Some(rates) = r.acceptance_rates {
                    t += &format!(
                        "  acceptance rates ({:.3}, {:.3}, {:.3})\n",
                        rates[0], rates[1], rates[2]
                    );
                }
                if let Some(pr) = &r.prior {
                    t += &format!(
                        "  prior shapes ({}, {}, {}) scales ({:.4e}, {:.4e}, {:.4e})\n",
                        pr.alpha_shape,
                        pr.beta_shape,
                        pr.theta_shape,
                        pr.alpha_scale,
                        pr.beta_scale,
                        pr.theta_scale
                    );
                }
            }
            t
        }
    };
    a.out.write(&text)
}

// ---------------------------------------------------------------------------
// gof
// ---------------------------------------------------------------------------

fn resolve_model(
    s: &ObservedSample,
    fit_method: Option<&str>,
    alpha: Option<f64>,
    beta: Option<f64>,
    theta: Option<f64>,
) -> Result<Params, Error> {
    match fit_method {
        Some(m) => {
            let config = FitConfig::default();
            let f = match m.to_ascii_lowercase().as_str() {
                "mle" => fit::fit_mle(s, None, &config)?,
                "mps" => fit::fit_mps(s, None, &config)?,
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "unknown fit method '{other}' (mle, mps)"
                    )))
                }
            };
            require_convergence(&f)?;
            Ok(f.params)
        }
        None => match (alpha, beta, theta) {
            (Some(a), Some(b), Some(t)) => Params::new(a, b, t),
            _ => Err(Error::InvalidConfig(
                "give --fit mle|mps or all of --alpha --beta --theta".into(),
            )),
        },
    }
}

fn cmd_gof(a: GofArgs) -> Result<(), Error> {
    let s = a.data.load()?;
    let params = resolve_model(&s, a.fit.as_deref(), a.alpha, a.beta, a.theta)?;
    let rep = gof::ks_test(&s, &params)?;
    let text = match a.out.format.as_str() {
        "json" => serde_json::to_string_pretty(&rep)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            + "\n",
        "csv" => format!(
            "n,alpha,beta,theta,ks_statistic,p_value\n{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            rep.n,
            rep.fitted.alpha(),
            rep.fitted.beta(),
            rep.fitted.theta(),
            rep.ks_statistic,
            rep.p_value
        ),
        _ => format!(
            "n = {}\nfitted (alpha, beta, theta) = ({:.4}, {:.4}, {:.4})\nK-S distance = {:.4}\np-value      = {:.4}\n",
            rep.n,
            rep.fitted.alpha(),
            rep.fitted.beta(),
            rep.fitted.theta(),
            rep.ks_statistic,
            rep.p_value
        ),
    };
    a.out.write(&text)
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

fn cmd_simulate(a: SimArgs) -> Result<(), Error> {
    if let Some(t) = a.threads {
        // ignore failure: the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let truth = parse_triple(&a.truth)?;
    let sizes: Vec<usize> = a
        .sizes
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad sample size '{p}'")))
        })
        .collect::<Result<_, _>>()?;
    let methods: Vec<Method> = a
        .methods
        .split(',')
        .map(|m| Method::parse(m.trim()))
        .collect::<Result<_, _>>()?;
    let mut sc = SimulationScenario::new(truth, sizes, a.reps, a.seed);
    sc.methods = methods;
    sc.prior = a.prior.as_deref().map(parse_prior).transpose()?;
    sc.mcmc_iterations = a.mcmc_k;
    sc.mcmc_burn_in = a.burn_in;
    sc.level = a.level;

    let report = sim::run_scenario(&sc)?;
    let text = match a.out.format.as_str() {
        "json" => report.to_json()? + "\n",
        _ => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("csv is utf8")
        }
    };
    a.out.write(&text)?;
    // comparison summary to stderr so machine output stays clean
    if report.scenario.methods.len() >= 2 {
        if let Ok(cmp) = sim::compare_methods(&report) {
            let mut msg = String::from("mse wins:");
            for (m, w) in &cmp.mse_wins {
                msg += &format!(" {m}={w}");
            }
            eprintln!("{msg}");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// eval / sample / plotdata
// ---------------------------------------------------------------------------

fn cmd_eval(a: EvalArgs) -> Result<(), Error> {
    let params = Params::new(a.alpha, a.beta, a.theta)?;
    let parts: Vec<&str> = a.grid.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidConfig(format!(
            "grid must be lo:hi:count, got '{}'",
            a.grid
        )));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("bad grid start '{}'", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("bad grid end '{}'", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("bad grid count '{}'", parts[2])))?;
    if count < 1 || lo >= hi {
        return Err(Error::InvalidConfig("grid needs lo < hi and count >= 1".into()));
    }
    type EvalFn = fn(&Params, f64) -> Result<f64, Error>;
    let f: EvalFn = match a.function.to_ascii_lowercase().as_str() {
        "pdf" => dist::pdf,
        "cdf" => dist::cdf,
        "survival" => dist::survival,
        "hazard" => dist::hazard,
        "reversed-hazard" => dist::reversed_hazard,
        "odd" => dist::odd_function,
        "quantile" => |p, q| dist::quantile(p, QuantileLevel::new(q)?),
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown function '{other}' (pdf, cdf, survival, hazard, reversed-hazard, odd, quantile)"
            )))
        }
    };
    let mut text = format!("x,{}\n", a.function.to_ascii_lowercase());
    for i in 0..count {
        let x = if count == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (count - 1) as f64
        };
        text += &format!("{:.16e},{:.16e}\n", x, f(&params, x)?);
    }
    a.out.write(&text)
}

fn cmd_sample(a: SampleArgs) -> Result<(), Error> {
    if a.n == 0 {
        return Err(Error::InvalidConfig("need n >= 1".into()));
    }
    let params = Params::new(a.alpha, a.beta, a.theta)?;
    let s = dist::sample(&params, a.n, a.seed);
    let mut buf = Vec::new();
    datasets::export_csv(s.values(), &mut buf)?;
    a.out.write(&String::from_utf8(buf).expect("csv is utf8"))
}

fn cmd_plotdata(a: PlotArgs) -> Result<(), Error> {
    let s = a.data.load()?;
    let params = resolve_model(&s, a.fit.as_deref(), a.alpha, a.beta, a.theta)?;
    let kind = PlotKind::parse(&a.kind)?;
    let data = gof::plot_data(&params, &s, kind)?;
    match a.out.format.as_str() {
        "json" => {
            let text = serde_json::to_string_pretty(&data)
                .map_err(|e| Error::InvalidConfig(e.to_string()))?
                + "\n";
            a.out.write(&text)
        }
        _ => {
            let mut buf = Vec::new();
            data.write_csv(&mut buf)?;
            a.out.write(&String::from_utf8(buf).expect("csv is utf8"))
        }
    }
}
