//! Analytic functions of the IGLFR(α, β, θ) law.
//!
//! Everything is driven by the inner exponent `z(x) = α/x + β/(2x²)` and
//! the recurring quantity `γ(x) = 1 - e^{-z(x)}`:
//!
//! ```text
//! F(x) = 1 - γ(x)^θ                     (distribution function)
//! f(x) = θ (α/x² + β/x³) e^{-z} γ^{θ-1} (density)
//! h(x) = θ (α/x² + β/x³) e^{-z} / γ     (hazard, proportional in θ)
//! ```
//!
//! All functions are pure; log-space branches keep them stable for z far
//! into either tail.

use crate::error::{Error, Result};
use crate::fit::ObservedSample;
use crate::numeric::{self, ln_one_minus_exp_neg};
use crate::params::{MomentOrder, Params, QuantileLevel};
use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

#[inline]
fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("x must be > 0, got {x}")))
    }
}

/// Inner exponent z(x) = α/x + β/(2x²).
#[inline]
pub fn inner_exponent(p: &Params, x: f64) -> f64 {
    p.alpha() / x + p.beta() / (2.0 * x * x)
}

/// The density's algebraic weight w(x) = α/x² + β/x³.
#[inline]
fn weight(p: &Params, x: f64) -> f64 {
    (p.alpha() / x + p.beta() / (x * x)) / x
}

/// ln γ(x) = ln(1 - e^{-z}), computed on the stable branch for the size
/// of z.
#[inline]
fn ln_gamma_z(z: f64) -> f64 {
    ln_one_minus_exp_neg(z)
}

/// Distribution function F(x) = 1 - γ(x)^θ.
pub fn cdf(p: &Params, x: f64) -> Result<f64> {
    check_x(x)?;
    let z = inner_exponent(p, x);
    Ok((-(p.theta() * ln_gamma_z(z)).exp_m1()).clamp(0.0, 1.0))
}

/// Survival function S(x) = γ(x)^θ = 1 - F(x).
pub fn survival(p: &Params, x: f64) -> Result<f64> {
    check_x(x)?;
    let z = inner_exponent(p, x);
    Ok((p.theta() * ln_gamma_z(z)).exp().clamp(0.0, 1.0))
}

/// Density f(x) = θ w(x) e^{-z} γ^{θ-1}.
pub fn pdf(p: &Params, x: f64) -> Result<f64> {
    Ok(log_pdf(p, x)?.exp())
}

/// ln f(x), assembled in log space so the deep tails stay finite for as
/// long as f64 allows. Returns `-inf` where the density underflows.
pub fn log_pdf(p: &Params, x: f64) -> Result<f64> {
    check_x(x)?;
    let z = inner_exponent(p, x);
    let w = weight(p, x);
    if w <= 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(p.theta().ln() + w.ln() - z + (p.theta() - 1.0) * ln_gamma_z(z))
}

/// Hazard rate h(x) = f(x) / S(x) = θ w e^{-z} / γ.
///
/// Satisfies h(x; α, β, θ) = θ · h(x; α, β, 1) identically, and tends to 0
/// at both ends of the support (upside-down bathtub shape).
pub fn hazard(p: &Params, x: f64) -> Result<f64> {
    check_x(x)?;
    let z = inner_exponent(p, x);
    let w = weight(p, x);
    // -expm1(-z) = 1 - e^{-z} exactly where it matters (small z)
    Ok(p.theta() * w * (-z).exp() / (-(-z).exp_m1()))
}

/// Reversed hazard rate r(x) = f(x) / F(x).
///
/// Evaluated as exp(ln f - ln F); errors once the CDF underflows beyond
/// what log-space arithmetic can carry (z ≳ 745).
pub fn reversed_hazard(p: &Params, x: f64) -> Result<f64> {
    check_x(x)?;
    let z = inner_exponent(p, x);
    let t_ln_g = p.theta() * ln_gamma_z(z);
    // ln F = ln(1 - e^{t_ln_g}), with t_ln_g < 0
    if t_ln_g == 0.0 || !t_ln_g.is_finite() {
        return Err(Error::Overflow(format!(
            "cdf underflows to 0 at x = {x}"
        )));
    }
    let ln_cdf = ln_one_minus_exp_neg(-t_ln_g);
    let lf = log_pdf(p, x)?;
    Ok((lf - ln_cdf).exp())
}

/// Odds of failure by x: O(x) = F(x)/S(x) = γ^{-θ} - 1.
pub fn odd_function(p: &Params, x: f64) -> Result<f64> {
    check_x(x)?;
    let z = inner_exponent(p, x);
    let e = -p.theta() * ln_gamma_z(z);
    if e > 709.0 {
        return Err(Error::Overflow(format!(
            "survival underflows at x = {x}; odds overflow f64"
        )));
    }
    Ok(e.exp_m1())
}

/// Quantile function: the x_q > 0 with F(x_q) = q.
///
/// Solving z(x_q) = -L with L = ln[1 - (1-q)^{1/θ}] < 0 gives the
/// quadratic L x² + α x + β/2 = 0, whose positive root is
/// `x_q = (-α - sqrt(α² - 2βL)) / (2L)`. With β = 0 the quadratic
/// collapses to x_q = -α/L, and with α = 0 to x_q = sqrt(-β/(2L));
/// both are taken as explicit branches.
pub fn quantile(p: &Params, q: QuantileLevel) -> Result<f64> {
    let q = q.get();
    // L = ln(1 - (1-q)^{1/θ}) via the stable log1mexp form:
    // (1-q)^{1/θ} = exp(ln(1-q)/θ), and -ln(1-q)/θ > 0
    let l = ln_one_minus_exp_neg(-(-q).ln_1p() / p.theta());
    debug_assert!(l < 0.0);
    let x = if p.beta() == 0.0 {
        -p.alpha() / l
    } else if p.alpha() == 0.0 {
        (-p.beta() / (2.0 * l)).sqrt()
    } else {
        let a = p.alpha();
        (-a - (a * a - 2.0 * p.beta() * l).sqrt()) / (2.0 * l)
    };
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::Overflow(format!(
            "quantile at q = {q} is not representable (got {x})"
        )))
    }
}

/// Median, i.e. `quantile(1/2)`.
pub fn median(p: &Params) -> Result<f64> {
    quantile(p, QuantileLevel::new(0.5).expect("0.5 in (0,1)"))
}

/// How to evaluate a raw moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMethod {
    /// Adaptive quadrature of x^r f(x) after the substitution u = 1/x.
    Quadrature,
    /// Binomial-series expansion of γ^{θ-1}, truncated at `terms`, with
    /// the integral done by the same quadrature. Terminates exactly when
    /// θ is a positive integer.
    Series { terms: usize },
}

// Integrand of E[X^r] under u = 1/x:
//   θ (α u^{-r} + β u^{1-r}) e^{-s(u)} γ_u^{θ-1},  s(u) = αu + βu²/2.
// `series_terms = None` evaluates γ^{θ-1} in closed form; otherwise the
// binomial series Σ_i b_i e^{-i s} is summed pointwise, stopping early
// once a term falls below 1e-14 of the partial sum.
fn moment_integrand(p: &Params, r: f64, u: f64, series_terms: Option<usize>) -> f64 {
    let s = p.alpha() * u + 0.5 * p.beta() * u * u;
    if s <= 0.0 {
        return 0.0;
    }
    let poly = p.alpha() * u.powf(-r) + p.beta() * u.powf(1.0 - r);
    let tm1 = p.theta() - 1.0;
    match series_terms {
        None => p.theta() * poly * (-s + tm1 * ln_gamma_z(s)).exp(),
        Some(terms) => {
            let y = (-s).exp();
            let mut coeff = 1.0; // b_0
            let mut acc = 1.0; // Σ b_i y^i, i = 0 term
            let mut ypow = 1.0;
            for i in 0..terms.saturating_sub(1) {
                coeff *= (i as f64 + 1.0 - p.theta()) / (i as f64 + 1.0);
                if coeff == 0.0 {
                    break; // integer θ: series terminates
                }
                ypow *= y;
                let term = coeff * ypow;
                acc += term;
                if term.abs() < 1e-14 * acc.abs() {
                    break;
                }
            }
            p.theta() * poly * y * acc
        }
    }
}

fn moment_raw(p: &Params, r: f64, series_terms: Option<usize>) -> Result<f64> {
    // upper cutoff in u where the exponent kills the integrand
    let upper = if p.beta() > 0.0 {
        (-p.alpha() + (p.alpha() * p.alpha() + 2.0 * 745.0 * p.beta()).sqrt()) / p.beta()
    } else {
        745.0 / p.alpha()
    };
    let q = numeric::integrate(
        |u| moment_integrand(p, r, u, series_terms),
        0.0,
        upper,
        1e-10,
        1e-8,
    )?;
    Ok(q.value)
}

/// Raw moment E[X^r].
///
/// Signals [`Error::MomentDoesNotExist`] when r reaches the tail index
/// (θ for α > 0, 2θ for α = 0) instead of returning a divergent
/// quadrature value.
pub fn moment(p: &Params, r: MomentOrder, method: MomentMethod) -> Result<f64> {
    if !r.exists_for(p) {
        return Err(Error::MomentDoesNotExist {
            order: r.get(),
            bound: MomentOrder::existence_bound(p),
        });
    }
    match method {
        MomentMethod::Quadrature => moment_raw(p, r.get(), None),
        MomentMethod::Series { terms } => moment_raw(p, r.get(), Some(terms.max(1))),
    }
}

/// Quadrature of the density over the support; equals 1 up to the
/// integration tolerance. Exposed for diagnostics and tests.
pub fn density_integral(p: &Params) -> Result<f64> {
    moment_raw(p, 0.0, None)
}

/// Bowley's quartile skewness, in [-1, 1].
pub fn skewness_bowley(p: &Params) -> Result<f64> {
    let q = |v: f64| quantile(p, QuantileLevel::new(v).expect("quartile level"));
    let (q1, q2, q3) = (q(0.25)?, q(0.5)?, q(0.75)?);
    Ok(((q3 - q2) - (q2 - q1)) / ((q3 - q2) + (q2 - q1)))
}

/// Moors' octile kurtosis [(E7-E5) + (E3-E1)] / (E6-E2).
pub fn kurtosis_moors(p: &Params) -> Result<f64> {
    let e = |i: usize| quantile(p, QuantileLevel::new(i as f64 / 8.0).expect("octile level"));
    Ok(((e(7)? - e(5)?) + (e(3)? - e(1)?)) / (e(6)? - e(2)?))
}

/// d/dx ln f(x); its unique sign change locates the mode.
fn dlog_pdf(p: &Params, x: f64) -> f64 {
    let z = inner_exponent(p, x);
    let w = weight(p, x);
    let wp = -(2.0 * p.alpha() / x + 3.0 * p.beta() / (x * x)) / (x * x);
    let ez = (-z).exp();
    wp / w + w - (p.theta() - 1.0) * w * ez / (-(-z).exp_m1())
}

/// Mode: the interior maximizer of the density.
///
/// Brackets the sign change of d(ln f)/dx starting from the central
/// quantile range, expanding geometrically if needed, then refines with
/// Brent's method. The second-order condition is verified numerically.
pub fn mode(p: &Params) -> Result<f64> {
    let mut lo = quantile(p, QuantileLevel::new(0.001).expect("level"))?;
    let mut hi = quantile(p, QuantileLevel::new(0.999).expect("level"))?;
    let mut flo = dlog_pdf(p, lo);
    let mut fhi = dlog_pdf(p, hi);
    let mut tries = 0;
    while flo <= 0.0 && tries < 60 {
        lo *= 0.5;
        flo = dlog_pdf(p, lo);
        tries += 1;
    }
    tries = 0;
    while fhi >= 0.0 && tries < 60 {
        hi *= 2.0;
        fhi = dlog_pdf(p, hi);
        tries += 1;
    }
    if flo <= 0.0 || fhi >= 0.0 {
        return Err(Error::RootNotBracketed { lo, hi });
    }
    let m = numeric::brent(|x| dlog_pdf(p, x), lo, hi, 1e-13 * hi.max(1.0))?;
    // numerical second-order check
    let eps = 1e-5 * m;
    let fm = log_pdf(p, m)?;
    if log_pdf(p, m - eps)? > fm || log_pdf(p, m + eps)? > fm {
        return Err(Error::Domain(format!(
            "stationary point at {m} failed the local-maximum check"
        )));
    }
    Ok(m)
}

/// Draws n independent variates by quantile inversion of Uniform(0,1).
///
/// Deterministic given `seed`; every caller gets an independent generator
/// so concurrent use never shares state.
pub fn sample(p: &Params, n: usize, seed: u64) -> ObservedSample {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    sample_with(p, n, &mut rng)
}

/// As [`sample`] but drawing from a caller-managed generator; the
/// simulation harness uses this with per-replication counter streams.
pub fn sample_with<R: Rng + ?Sized>(p: &Params, n: usize, rng: &mut R) -> ObservedSample {
    let values: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.sample(Open01);
            quantile(p, QuantileLevel::new(u).expect("Open01 is in (0,1)"))
                .expect("quantile finite on (0,1)")
        })
        .collect();
    ObservedSample::new(values).expect("positive draws")
}
