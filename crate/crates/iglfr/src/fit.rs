//! Maximum likelihood and maximum product spacings estimation, observed
//! information, and asymptotic confidence intervals.
//!
//! Both estimators share one optimizer: a BFGS ascent on the
//! log-reparameterized space (ln α, ln β, ln θ) — which enforces
//! positivity without constraints — followed by a safeguarded Newton
//! polish on the gradient system to drive the reparameterized gradient
//! norm below tolerance.

use crate::dist;
use crate::error::{Error, Result};
use crate::numeric::{self, ln_one_minus_exp_neg, Mat3};
use crate::params::Params;
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Observed samples
// ---------------------------------------------------------------------------

/// A validated vector of positive observations with a sorted view.
///
/// Construction accepts any length (the Bayes module samples the prior
/// from an empty sample); three-parameter fitting requires n ≥ 4.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservedSample {
    values: Vec<f64>,
    sorted: Vec<f64>,
}

impl ObservedSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v <= 0.0) {
            return Err(Error::InvalidSample(format!(
                "observations must be positive and finite, found {bad}"
            )));
        }
        let mut sorted = values.clone();
        sorted.sort_by(|a, b| a.total_cmp(b));
        Ok(Self { values, sorted })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Observations in input order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Nondecreasing view of the observations.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Linear-interpolation empirical quantile of the sorted sample.
    pub fn empirical_quantile(&self, q: f64) -> f64 {
        let n = self.sorted.len();
        assert!(n > 0, "empirical quantile of an empty sample");
        let pos = q.clamp(0.0, 1.0) * (n - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        let frac = pos - lo as f64;
        self.sorted[lo] * (1.0 - frac) + self.sorted[hi] * frac
    }
}

// ---------------------------------------------------------------------------
// Fit results
// ---------------------------------------------------------------------------

/// Which estimator produced a [`FitResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FitMethod {
    Mle,
    Mps,
}

impl std::fmt::Display for FitMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FitMethod::Mle => write!(f, "MLE"),
            FitMethod::Mps => write!(f, "MPS"),
        }
    }
}

/// Identifies one coordinate of the parameter triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamName {
    Alpha,
    Beta,
    Theta,
}

impl ParamName {
    pub const ALL: [ParamName; 3] = [ParamName::Alpha, ParamName::Beta, ParamName::Theta];

    pub fn index(&self) -> usize {
        match self {
            ParamName::Alpha => 0,
            ParamName::Beta => 1,
            ParamName::Theta => 2,
        }
    }
}

impl std::fmt::Display for ParamName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamName::Alpha => write!(f, "alpha"),
            ParamName::Beta => write!(f, "beta"),
            ParamName::Theta => write!(f, "theta"),
        }
    }
}

/// Stopping rules for the optimizer.
#[derive(Debug, Clone, Copy)]
pub struct FitConfig {
    /// Convergence threshold on the reparameterized gradient norm.
    pub gradient_tol: f64,
    /// Minimal parameter step (log scale) before declaring a stall.
    pub step_tol: f64,
    pub max_iterations: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            gradient_tol: 1e-8,
            step_tol: 1e-10,
            max_iterations: 500,
        }
    }
}

/// A fitted parameter triple with curvature information.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitResult {
    pub params: Params,
    /// Maximized objective: the log-likelihood for MLE, the mean log
    /// spacing g* for MPS.
    pub objective: f64,
    pub method: FitMethod,
    pub converged: bool,
    pub iterations: usize,
    /// Gradient norm at the returned iterate, on the (ln α, ln β, ln θ)
    /// scale the optimizer works in.
    pub gradient_norm: f64,
    /// Observed likelihood information (negative log-likelihood Hessian)
    /// at the fitted point. For MPS fits this is still the likelihood
    /// information evaluated at the MPS estimate, the standard normal-
    /// theory curvature for spacings estimators.
    pub observed_info: Mat3,
    /// Inverse of `observed_info`. NaN-filled when the information is not
    /// positive definite at the returned point, which can happen at a
    /// non-converged iterate or at an MPS estimate on a small sample.
    pub covariance: Mat3,
    /// Square roots of the covariance diagonal.
    pub std_errors: [f64; 3],
}

/// A two-sided interval for one parameter.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub parameter: ParamName,
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
}

// ---------------------------------------------------------------------------
// Log-likelihood, score, observed information
// ---------------------------------------------------------------------------

/// Log-likelihood
/// l = n ln θ + Σ ln(α/x² + β/x³) - Σ z_i + (θ-1) Σ ln(1 - e^{-z_i}).
pub fn log_likelihood(p: &Params, s: &ObservedSample) -> f64 {
    let mut acc = s.n() as f64 * p.theta().ln();
    for &x in s.values() {
        let z = dist::inner_exponent(p, x);
        let w = (p.alpha() / x + p.beta() / (x * x)) / x; // α/x² + β/x³
        if w <= 0.0 || z <= 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += w.ln() - z + (p.theta() - 1.0) * ln_one_minus_exp_neg(z);
    }
    acc
}

/// Score vector (∂l/∂α, ∂l/∂β, ∂l/∂θ).
pub fn score(p: &Params, s: &ObservedSample) -> [f64; 3] {
    let mut g = [0.0, 0.0, s.n() as f64 / p.theta()];
    for &x in s.values() {
        let z = dist::inner_exponent(p, x);
        let w = (p.alpha() / x + p.beta() / (x * x)) / x; // α/x² + β/x³
        let ratio = (-z).exp() / (-(-z).exp_m1()); // e^{-z} / (1 - e^{-z})
        let tm1 = p.theta() - 1.0;
        g[0] += (1.0 / (x * x)) / w - 1.0 / x + tm1 * ratio / x;
        g[1] += (1.0 / (x * x * x)) / w - 1.0 / (2.0 * x * x) + tm1 * ratio / (2.0 * x * x);
        g[2] += ln_one_minus_exp_neg(z);
    }
    g
}

/// Observed information: the negative Hessian of the log-likelihood,
/// assembled from the analytic second derivatives
/// (∂²l/∂θ² = -n/θ² exactly).
pub fn observed_information(p: &Params, s: &ObservedSample) -> Mat3 {
    let tm1 = p.theta() - 1.0;
    let (mut i_aa, mut i_ab, mut i_bb, mut i_at, mut i_bt) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &x in s.values() {
        let z = dist::inner_exponent(p, x);
        let w = (p.alpha() / x + p.beta() / (x * x)) / x; // α/x² + β/x³
        let g = -(-z).exp_m1(); // 1 - e^{-z}
        let r2 = (-z).exp() / (g * g); // e^{-z} / (1 - e^{-z})²
        let r1 = (-z).exp() / g;
        let x2 = x * x;
        let w2 = w * w;
        i_aa += (1.0 / (x2 * x2)) / w2 + tm1 * r2 / x2;
        i_ab += (1.0 / (x2 * x2 * x)) / w2 + tm1 * r2 / (2.0 * x2 * x);
        i_bb += (1.0 / (x2 * x2 * x2)) / w2 + tm1 * r2 / (4.0 * x2 * x2);
        i_at -= r1 / x;
        i_bt -= r1 / (2.0 * x2);
    }
    let i_tt = s.n() as f64 / (p.theta() * p.theta());
    [
        [i_aa, i_ab, i_at],
        [i_ab, i_bb, i_bt],
        [i_at, i_bt, i_tt],
    ]
}

// ---------------------------------------------------------------------------
// Maximum product spacings
// ---------------------------------------------------------------------------

// F(x_i) and S(x_i) over the sorted sample, each on its stable branch.
fn cdf_survival_pairs(p: &Params, sorted: &[f64]) -> Vec<(f64, f64)> {
    sorted
        .iter()
        .map(|&x| {
            let z = dist::inner_exponent(p, x);
            let ln_s = p.theta() * ln_one_minus_exp_neg(z);
            let s = ln_s.exp();
            (-ln_s.exp_m1(), s)
        })
        .collect()
}

// spacing D_i between consecutive order statistics, taken from whichever
// tail representation keeps the difference accurate
fn spacing(prev: (f64, f64), cur: (f64, f64)) -> f64 {
    if prev.0 > 0.5 {
        prev.1 - cur.1
    } else {
        cur.0 - prev.0
    }
}

/// Mean log spacing
/// g* = (n+1)^{-1} [ln D_1 + Σ ln D_i + ln D_{n+1}], the objective the
/// MPS estimator maximizes. Tied observations contribute ln f(x_i) in
/// place of the vanishing spacing (Cheng–Amin convention).
pub fn mps_objective(p: &Params, s: &ObservedSample) -> f64 {
    let sorted = s.sorted();
    let n = sorted.len();
    assert!(n >= 1, "mps objective needs data");
    let fs = cdf_survival_pairs(p, sorted);
    let mut acc = safe_ln(fs[0].0);
    for i in 1..n {
        if sorted[i] == sorted[i - 1] {
            acc += dist::log_pdf(p, sorted[i]).unwrap_or(f64::NEG_INFINITY);
        } else {
            acc += safe_ln(spacing(fs[i - 1], fs[i]));
        }
    }
    acc += safe_ln(fs[n - 1].1);
    acc / (n as f64 + 1.0)
}

#[inline]
fn safe_ln(d: f64) -> f64 {
    if d > 0.0 {
        d.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// Analytic gradient of [`mps_objective`].
///
/// Built from ∂F/∂α = -(θ/x)(1-γ)γ^{θ-1}, ∂F/∂β = -(θ/2x²)(1-γ)γ^{θ-1},
/// and ∂F/∂θ = -γ^θ ln γ; tied observations contribute the score of
/// ln f(x_i) instead.
pub fn mps_gradient(p: &Params, s: &ObservedSample) -> [f64; 3] {
    let sorted = s.sorted();
    let n = sorted.len();
    let fs = cdf_survival_pairs(p, sorted);
    // dF[i] = (∂F/∂α, ∂F/∂β, ∂F/∂θ) at x_(i)
    let df: Vec<[f64; 3]> = sorted
        .iter()
        .map(|&x| {
            let z = dist::inner_exponent(p, x);
            let ln_g = ln_one_minus_exp_neg(z);
            let common = -(p.theta().ln() - z + (p.theta() - 1.0) * ln_g).exp();
            [
                common / x,
                common / (2.0 * x * x),
                -(p.theta() * ln_g).exp() * ln_g,
            ]
        })
        .collect();
    let mut g = [0.0_f64; 3];
    let d1 = fs[0].0;
    for j in 0..3 {
        g[j] += df[0][j] / d1;
    }
    for i in 1..n {
        if sorted[i] == sorted[i - 1] {
            let x = sorted[i];
            let z = dist::inner_exponent(p, x);
            let w = (p.alpha() / x + p.beta() / (x * x)) / x; // α/x² + β/x³
            let ratio = (-z).exp() / (-(-z).exp_m1());
            let tm1 = p.theta() - 1.0;
            g[0] += (1.0 / (x * x)) / w - 1.0 / x + tm1 * ratio / x;
            g[1] += (1.0 / (x * x * x)) / w - 1.0 / (2.0 * x * x) + tm1 * ratio / (2.0 * x * x);
            g[2] += 1.0 / p.theta() + ln_one_minus_exp_neg(z);
        } else {
            let d = spacing(fs[i - 1], fs[i]);
            for j in 0..3 {
                g[j] += (df[i][j] - df[i - 1][j]) / d;
            }
        }
    }
    let dn1 = fs[n - 1].1;
    for j in 0..3 {
        g[j] -= df[n - 1][j] / dn1;
    }
    let m = n as f64 + 1.0;
    [g[0] / m, g[1] / m, g[2] / m]
}

// ---------------------------------------------------------------------------
// Optimizer
// ---------------------------------------------------------------------------

fn norm(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

// gradient in (ln α, ln β, ln θ) coordinates
fn log_space_gradient(p: &[f64; 3], g: &[f64; 3]) -> [f64; 3] {
    [p[0] * g[0], p[1] * g[1], p[2] * g[2]]
}

fn params_from_log(v: &[f64; 3]) -> Params {
    Params::new(v[0].exp(), v[1].exp(), v[2].exp()).expect("exp of finite log-parameters")
}

/// Method-of-quantiles starting point: θ⁰ = 1 (where F = e^{-z}), then a
/// 2×2 linear solve of z(x_q) = -ln q at the empirical quartiles. Falls
/// back to (median·ln 2, median², 1) when the solve leaves either
/// coefficient nonpositive.
fn default_init(s: &ObservedSample) -> Params {
    let x25 = s.empirical_quantile(0.25);
    let x75 = s.empirical_quantile(0.75);
    let med = s.empirical_quantile(0.5);
    let fallback = Params::new(med * std::f64::consts::LN_2, med * med, 1.0)
        .expect("median of a positive sample is positive");
    if x25 <= 0.0 || x75 <= x25 {
        return fallback;
    }
    // [1/x25  1/(2 x25²)] [α]   [ln 4        ]
    // [1/x75  1/(2 x75²)] [β] = [-ln(3/4)    ]
    let (a11, a12, b1) = (1.0 / x25, 0.5 / (x25 * x25), 4.0_f64.ln());
    let (a21, a22, b2) = (1.0 / x75, 0.5 / (x75 * x75), -(0.75_f64.ln()));
    let det = a11 * a22 - a12 * a21;
    if det.abs() < 1e-300 {
        return fallback;
    }
    let alpha = (b1 * a22 - a12 * b2) / det;
    let beta = (a11 * b2 - b1 * a21) / det;
    if alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite() {
        Params::new(alpha, beta, 1.0).expect("positive seed")
    } else {
        fallback
    }
}

type ValueFn<'a> = Box<dyn Fn(&Params) -> f64 + 'a>;
type GradientFn<'a> = Box<dyn Fn(&Params) -> [f64; 3] + 'a>;

struct Objective<'a> {
    value: ValueFn<'a>,
    gradient: GradientFn<'a>,
}

fn maximize(obj: &Objective, init: &Params, config: &FitConfig) -> (Params, f64, usize, f64) {
    const V_MIN: f64 = -700.0;
    const V_MAX: f64 = 700.0;
    let clamp_v = |v: &mut [f64; 3]| {
        for x in v.iter_mut() {
            *x = x.clamp(V_MIN, V_MAX);
        }
    };

    let mut v = [
        init.alpha().max(1e-300).ln(),
        init.beta().max(1e-300).ln(),
        init.theta().ln(),
    ];
    clamp_v(&mut v);
    let p0 = params_from_log(&v);
    let mut fv = (obj.value)(&p0);
    let mut gv = log_space_gradient(&p0.as_array(), &(obj.gradient)(&p0));
    let mut h: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut iterations = 0;

    // phase 1: BFGS ascent with backtracking
    while iterations < config.max_iterations {
        if norm(&gv) < config.gradient_tol {
            break;
        }
        iterations += 1;
        let mut dir = numeric::mat3_mul_vec(&h, &gv);
        // keep steps bounded in log space
        let dn = norm(&dir);
        if dn > 2.0 {
            for d in dir.iter_mut() {
                *d *= 2.0 / dn;
            }
        }
        // ascent check; reset the approximation if it ever degenerates
        let slope = dir[0] * gv[0] + dir[1] * gv[1] + dir[2] * gv[2];
        if slope <= 0.0 {
            h = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
            dir = gv;
        }
        let slope = dir[0] * gv[0] + dir[1] * gv[1] + dir[2] * gv[2];

        let mut t = 1.0;
        let mut accepted = false;
        let mut v_new = v;
        let mut f_new = fv;
        for _ in 0..50 {
            v_new = [v[0] + t * dir[0], v[1] + t * dir[1], v[2] + t * dir[2]];
            clamp_v(&mut v_new);
            let cand = params_from_log(&v_new);
            f_new = (obj.value)(&cand);
            if f_new.is_finite() && f_new >= fv + 1e-4 * t * slope {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break; // line search stalled; hand over to the polish
        }
        let step = [v_new[0] - v[0], v_new[1] - v[1], v_new[2] - v[2]];
        if norm(&step) < config.step_tol {
            v = v_new;
            fv = f_new;
            let pc = params_from_log(&v);
            gv = log_space_gradient(&pc.as_array(), &(obj.gradient)(&pc));
            break;
        }
        let p_new = params_from_log(&v_new);
        let g_new = log_space_gradient(&p_new.as_array(), &(obj.gradient)(&p_new));
        // BFGS update on y = -(g_new - g) (minimization convention)
        let y = [gv[0] - g_new[0], gv[1] - g_new[1], gv[2] - g_new[2]];
        let sy = step[0] * y[0] + step[1] * y[1] + step[2] * y[2];
        if sy > 1e-12 * norm(&step) * norm(&y) {
            let hy = numeric::mat3_mul_vec(&h, &y);
            let yhy = y[0] * hy[0] + y[1] * hy[1] + y[2] * hy[2];
            for i in 0..3 {
                for j in 0..3 {
                    h[i][j] += (sy + yhy) * step[i] * step[j] / (sy * sy)
                        - (hy[i] * step[j] + step[i] * hy[j]) / sy;
                }
            }
        }
        v = v_new;
        fv = f_new;
        gv = g_new;
    }

    // phase 2: Newton polish on the gradient system, safeguarded by
    // gradient-norm descent. The Hessian in log coordinates comes from
    // symmetric differencing of the analytic gradient.
    let mut best = (v, fv, norm(&gv));
    for _ in 0..60 {
        if best.2 < config.gradient_tol || iterations >= config.max_iterations {
            break;
        }
        iterations += 1;
        let hess = log_space_hessian(obj, &best.0);
        let Some(hinv) = numeric::mat3_inverse(&hess) else {
            break;
        };
        let pc = params_from_log(&best.0);
        let gc = log_space_gradient(&pc.as_array(), &(obj.gradient)(&pc));
        let full = numeric::mat3_mul_vec(&hinv, &gc);
        let mut improved = false;
        let mut t = 1.0;
        for _ in 0..25 {
            let mut v_new = [
                best.0[0] - t * full[0],
                best.0[1] - t * full[1],
                best.0[2] - t * full[2],
            ];
            clamp_v(&mut v_new);
            let cand = params_from_log(&v_new);
            let g_new = log_space_gradient(&cand.as_array(), &(obj.gradient)(&cand));
            let gn = norm(&g_new);
            if gn.is_finite() && gn < best.2 {
                best = (v_new, (obj.value)(&cand), gn);
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }

    let p = params_from_log(&best.0);
    (p, best.1, iterations, best.2)
}

// Hessian of the objective in log coordinates, by central differences of
// the analytic gradient (symmetrized).
#[allow(clippy::needless_range_loop)]
fn log_space_hessian(obj: &Objective, v: &[f64; 3]) -> Mat3 {
    let h = 1e-5;
    let mut m = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut vp = *v;
        let mut vm = *v;
        vp[j] += h;
        vm[j] -= h;
        let pp = params_from_log(&vp);
        let pm = params_from_log(&vm);
        let gp = log_space_gradient(&pp.as_array(), &(obj.gradient)(&pp));
        let gm = log_space_gradient(&pm.as_array(), &(obj.gradient)(&pm));
        for i in 0..3 {
            m[i][j] = (gp[i] - gm[i]) / (2.0 * h);
        }
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            let s = 0.5 * (m[i][j] + m[j][i]);
            m[i][j] = s;
            m[j][i] = s;
        }
    }
    m
}

fn finish_fit(
    s: &ObservedSample,
    method: FitMethod,
    p: Params,
    objective: f64,
    iterations: usize,
    gradient_norm: f64,
    config: &FitConfig,
) -> Result<FitResult> {
    let converged = gradient_norm < config.gradient_tol;
    let info = observed_information(&p, s);
    let pd = numeric::mat3_is_positive_definite(&info);
    // a converged MLE sits at a likelihood maximum, so its information
    // must be positive definite; an MPS estimate is a different point and
    // the likelihood curvature there can fail PD on small samples, which
    // only disables the normal-theory intervals
    if converged && !pd && method == FitMethod::Mle {
        return Err(Error::SingularInformation);
    }
    let nan = [[f64::NAN; 3]; 3];
    let covariance = if pd {
        numeric::mat3_inverse(&info).unwrap_or(nan)
    } else {
        nan
    };
    let std_errors = if pd {
        [
            covariance[0][0].max(0.0).sqrt(),
            covariance[1][1].max(0.0).sqrt(),
            covariance[2][2].max(0.0).sqrt(),
        ]
    } else {
        [f64::NAN; 3]
    };
    Ok(FitResult {
        params: p,
        objective,
        method,
        converged,
        iterations,
        gradient_norm,
        observed_info: info,
        covariance,
        std_errors,
    })
}

fn check_fit_sample(s: &ObservedSample) -> Result<()> {
    if s.n() < 4 {
        return Err(Error::InvalidSample(format!(
            "three-parameter fitting needs n >= 4, got {}",
            s.n()
        )));
    }
    Ok(())
}

/// Maximum likelihood fit.
pub fn fit_mle(s: &ObservedSample, init: Option<Params>, config: &FitConfig) -> Result<FitResult> {
    check_fit_sample(s)?;
    let obj = Objective {
        value: Box::new(move |p: &Params| log_likelihood(p, s)),
        gradient: Box::new(move |p: &Params| score(p, s)),
    };
    let start = init.unwrap_or_else(|| default_init(s));
    let (p, f, it, gn) = maximize(&obj, &start, config);
    finish_fit(s, FitMethod::Mle, p, f, it, gn, config)
}

/// Maximum product spacings fit.
pub fn fit_mps(s: &ObservedSample, init: Option<Params>, config: &FitConfig) -> Result<FitResult> {
    check_fit_sample(s)?;
    let obj = Objective {
        value: Box::new(move |p: &Params| mps_objective(p, s)),
        gradient: Box::new(move |p: &Params| mps_gradient(p, s)),
    };
    let start = init.unwrap_or_else(|| default_init(s));
    let (p, f, it, gn) = maximize(&obj, &start, config);
    finish_fit(s, FitMethod::Mps, p, f, it, gn, config)
}

/// Normal-theory confidence intervals estimate ± Z_{ν/2}·SE from a
/// converged fit. Lower bounds are not truncated at zero.
pub fn asymptotic_cis(fit: &FitResult, level: f64) -> Result<[ConfidenceInterval; 3]> {
    if !(0.0 < level && level < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "confidence level must lie in (0,1), got {level}"
        )));
    }
    if !fit.converged {
        return Err(Error::NonConvergence {
            iterations: fit.iterations,
            gradient_norm: fit.gradient_norm,
        });
    }
    if fit.std_errors.iter().any(|s| !s.is_finite()) {
        return Err(Error::SingularInformation);
    }
    let z = numeric::normal_quantile(0.5 + level / 2.0);
    let est = fit.params.as_array();
    Ok([0, 1, 2].map(|i| ConfidenceInterval {
        parameter: ParamName::ALL[i],
        lower: est[i] - z * fit.std_errors[i],
        upper: est[i] + z * fit.std_errors[i],
        level,
    }))
}
