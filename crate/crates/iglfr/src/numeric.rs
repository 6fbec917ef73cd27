//! Shared numerical kernels: adaptive quadrature, root finding, special
//! functions, and the Kolmogorov statistic distribution.

// quadrature nodes and frozen reference values carry their full published
// digits even where f64 truncates them
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

/// ln(1 - e^{-z}) for z > 0 without cancellation.
///
/// Splits at ln 2: below it, 1 - e^{-z} is small and `expm1` carries the
/// precision; above it, e^{-z} is small and `ln_1p` does.
#[inline]
pub fn ln_one_minus_exp_neg(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    if z > std::f64::consts::LN_2 {
        (-(-z).exp()).ln_1p()
    } else {
        (-(-z).exp_m1()).ln()
    }
}

/// ln C(n, k) via log-gamma, stable for large n.
#[inline]
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    statrs::function::gamma::ln_gamma(n as f64 + 1.0)
        - statrs::function::gamma::ln_gamma(k as f64 + 1.0)
        - statrs::function::gamma::ln_gamma((n - k) as f64 + 1.0)
}

/// Standard normal quantile (inverse CDF).
pub fn normal_quantile(p: f64) -> f64 {
    use statrs::distribution::ContinuousCDF;
    let n = statrs::distribution::Normal::new(0.0, 1.0).expect("unit normal");
    n.inverse_cdf(p)
}

/// Regularized incomplete beta function I_x(a, b).
#[inline]
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    statrs::function::beta::beta_reg(a, b, x)
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature
// ---------------------------------------------------------------------------

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the embedded
// 7-point Gauss rule. Values are the classical QUADPACK constants.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_2,
    0.949_107_912_342_758_524_5,
    0.864_864_423_359_769_072_8,
    0.741_531_185_599_394_439_9,
    0.586_087_235_467_691_130_3,
    0.405_845_151_377_397_166_9,
    0.207_784_955_007_898_467_6,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_96,
    0.063_092_092_629_978_553_29,
    0.104_790_010_322_250_183_8,
    0.140_653_259_715_525_918_7,
    0.169_004_726_639_267_902_8,
    0.190_350_578_064_785_409_9,
    0.204_432_940_075_298_892_1,
    0.209_482_141_084_727_828_1,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_3,
    0.279_705_391_489_276_667_9,
    0.381_830_050_505_118_944_9,
    0.417_959_183_673_469_387_8,
];

// classic error rescaling: sharpen |K - G| against the dispersion of the
// integrand, floored at 50 ulps of the absolute integral
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = kronrod.abs();
    let mut vals = [0.0_f64; 15];
    vals[7] = fc;
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        vals[j] = f1;
        vals[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((vals[j] - mean).abs() + (vals[14 - j] - mean).abs());
    }
    let habs = half.abs();
    let integral = kronrod * half;
    let err = rescale_error((kronrod - gauss) * half, res_abs * habs, res_asc * habs);
    (integral, err)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
}

/// Integrate `f` over the finite interval [a, b] by adaptive 15-point
/// Gauss-Kronrod bisection.
///
/// Stops when the summed error estimate is below
/// `max(abs_tol, rel_tol * |integral|)`; errors out with the achieved
/// tolerance attached if the subdivision budget is exhausted first.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Quadrature> {
    const MAX_INTERVALS: usize = 2048;
    struct Seg {
        a: f64,
        b: f64,
        val: f64,
        err: f64,
    }
    let (val, err) = gk15(&f, a, b);
    let mut segs = vec![Seg { a, b, val, err }];
    loop {
        let total: f64 = segs.iter().map(|s| s.val).sum();
        let toterr: f64 = segs.iter().map(|s| s.err).sum();
        if toterr <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(Quadrature {
                value: total,
                abs_error: toterr,
                subdivisions: segs.len(),
            });
        }
        if segs.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureNonConvergence { achieved: toterr });
        }
        // split the segment with the largest error estimate
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("non-empty segment list");
        let Seg { a, b, .. } = segs.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if !(a < mid && mid < b) {
            // interval exhausted by floating point: accept what we have
            let (val, err) = gk15(&f, a, b);
            segs.push(Seg {
                a,
                b,
                val,
                err: err.min(f64::EPSILON * val.abs()),
            });
            continue;
        }
        let (v1, e1) = gk15(&f, a, mid);
        let (v2, e2) = gk15(&f, mid, b);
        segs.push(Seg {
            a,
            b: mid,
            val: v1,
            err: e1,
        });
        segs.push(Seg {
            a: mid,
            b,
            val: v2,
            err: e2,
        });
    }
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

/// Brent's method on a bracketing interval [a, b] with f(a)·f(b) ≤ 0.
pub fn brent<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::RootNotBracketed { lo: a, hi: b });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0));
                q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else {
            tol1.copysign(xm)
        };
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            e = b - a;
            d = e;
        }
    }
    Ok(b)
}

// ---------------------------------------------------------------------------
// 3x3 symmetric linear algebra (all the dimensions this crate needs)
// ---------------------------------------------------------------------------

pub type Mat3 = [[f64; 3]; 3];

pub fn mat3_mul_vec(m: &Mat3, v: &[f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Whether a symmetric 3x3 matrix is positive definite (Sylvester).
pub fn mat3_is_positive_definite(m: &Mat3) -> bool {
    let d1 = m[0][0];
    let d2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    d1 > 0.0 && d2 > 0.0 && mat3_det(m) > 0.0
}

pub fn mat3_det(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse by the adjugate; `None` when the determinant vanishes or the
/// entries are not finite.
#[allow(clippy::needless_range_loop)] // adjugate index arithmetic
pub fn mat3_inverse(m: &Mat3) -> Option<Mat3> {
    let det = mat3_det(m);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let inv_det = 1.0 / det;
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b, c, d) = (
                m[(j + 1) % 3][(i + 1) % 3],
                m[(j + 1) % 3][(i + 2) % 3],
                m[(j + 2) % 3][(i + 1) % 3],
                m[(j + 2) % 3][(i + 2) % 3],
            );
            out[i][j] = (a * d - b * c) * inv_det;
        }
    }
    if out.iter().flatten().all(|v| v.is_finite()) {
        Some(out)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Kolmogorov statistic distribution
// ---------------------------------------------------------------------------

/// Large-sample p-value P(D_n ≥ d): the Kolmogorov series
/// 2 Σ_{k≥1} (-1)^{k-1} exp(-2 k² n d²), truncated at 100 terms.
pub fn kolmogorov_asymptotic_p(d: f64, n: usize) -> f64 {
    if d <= 0.0 {
        return 1.0;
    }
    let nd2 = n as f64 * d * d;
    let mut p = 0.0;
    for k in 1..=100u32 {
        let k2 = (k * k) as f64;
        let term = (-2.0 * k2 * nd2).exp();
        if k % 2 == 1 {
            p += term;
        } else {
            p -= term;
        }
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * p).clamp(0.0, 1.0)
}

/// Exact finite-sample p-value P(D_n ≥ d) by the Marsaglia–Tsang–Wang
/// matrix-power evaluation of P(D_n < d).
///
/// Cost grows as (n·d)³·log n; intended for n up to a few hundred.
#[allow(clippy::needless_range_loop)] // banded-matrix index arithmetic
pub fn kolmogorov_exact_p(d: f64, n: usize) -> f64 {
    if d <= 0.0 {
        return 1.0;
    }
    if d >= 1.0 {
        return 0.0;
    }
    let nf = n as f64;
    let k = (nf * d).ceil() as usize;
    let h = k as f64 - nf * d;
    let m = 2 * k - 1;

    let mut big_h = vec![vec![0.0_f64; m]; m];
    for (i, row) in big_h.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = if i + 1 >= j { 1.0 } else { 0.0 };
        }
    }
    for i in 0..m {
        big_h[i][0] -= h.powi(i as i32 + 1);
        big_h[m - 1][i] -= h.powi((m - i) as i32);
    }
    big_h[m - 1][0] += if 2.0 * h - 1.0 > 0.0 {
        (2.0 * h - 1.0).powi(m as i32)
    } else {
        0.0
    };
    for i in 0..m {
        for j in 0..m {
            if i + 1 >= j {
                for f in 1..=(i + 1 - j) {
                    big_h[i][j] /= f as f64;
                }
            }
        }
    }

    // H^n with power-of-two exponentiation; track a decimal exponent to
    // keep entries inside f64 range.
    fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let m = a.len();
        let mut c = vec![vec![0.0; m]; m];
        for i in 0..m {
            for l in 0..m {
                let ail = a[i][l];
                if ail == 0.0 {
                    continue;
                }
                for j in 0..m {
                    c[i][j] += ail * b[l][j];
                }
            }
        }
        c
    }
    fn rescale(a: &mut [Vec<f64>], center: usize, exp: &mut i64) {
        if a[center][center] > 1e140 {
            for row in a.iter_mut() {
                for v in row.iter_mut() {
                    *v *= 1e-140;
                }
            }
            *exp += 140;
        }
    }

    let mut exp_acc: i64 = 0;
    let mut result: Option<(Vec<Vec<f64>>, i64)> = None;
    let mut base = big_h;
    let mut base_exp: i64 = 0;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = Some(match result {
                None => (base.clone(), base_exp),
                Some((r, re)) => {
                    let mut p = mat_mul(&r, &base);
                    let mut pe = re + base_exp;
                    rescale(&mut p, k - 1, &mut pe);
                    (p, pe)
                }
            });
        }
        e >>= 1;
        if e > 0 {
            let mut sq = mat_mul(&base, &base);
            let mut sqe = 2 * base_exp;
            rescale(&mut sq, k - 1, &mut sqe);
            base = sq;
            base_exp = sqe;
        }
    }
    let (hn, hexp) = result.expect("n >= 1");
    exp_acc += hexp;

    // P(D_n < d) = n!/n^n · (H^n)[k-1][k-1]
    let mut t = hn[k - 1][k - 1];
    for i in 1..=n {
        t *= i as f64 / nf;
        if t < 1e-140 {
            t *= 1e140;
            exp_acc -= 140;
        }
    }
    let cdf = t * 10f64.powi(exp_acc.clamp(-300, 300) as i32);
    (1.0 - cdf).clamp(0.0, 1.0)
}
