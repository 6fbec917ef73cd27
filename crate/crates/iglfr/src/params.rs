//! Parameter domain types.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The parameter triple (α, β, θ) of the IGLFR law.
///
/// The distribution has CDF `F(x) = 1 - [1 - exp(-(α/x + β/(2x²)))]^θ` on
/// x > 0. `alpha` carries the units of x, `beta` the units of x², and
/// `theta` is a dimensionless shape. The inner exponent
/// `z(x) = α/x + β/(2x²)` is positive and strictly decreasing on the
/// support whenever α + β > 0.
///
/// `alpha = 0` or `beta = 0` are admitted to express the nested special
/// cases (inverse Rayleigh-type and generalized inverted exponential
/// respectively); both cannot vanish at once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    alpha: f64,
    beta: f64,
    theta: f64,
}

impl Params {
    /// Validates and constructs a parameter triple.
    ///
    /// Requires `theta > 0`, `alpha ≥ 0`, `beta ≥ 0`, `alpha + beta > 0`,
    /// and all values finite.
    pub fn new(alpha: f64, beta: f64, theta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || !theta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "non-finite values (alpha={alpha}, beta={beta}, theta={theta})"
            )));
        }
        if theta <= 0.0 {
            return Err(Error::InvalidParams(format!("theta must be > 0, got {theta}")));
        }
        if alpha < 0.0 || beta < 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must be >= 0, got alpha={alpha}, beta={beta}"
            )));
        }
        if alpha + beta <= 0.0 {
            return Err(Error::InvalidParams(
                "alpha + beta must be > 0".to_string(),
            ));
        }
        Ok(Self { alpha, beta, theta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The same (α, β) with a different shape; used by the proportional
    /// hazard identity and the likelihood-ratio ordering checks.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, theta)
    }

    /// Parameters as an `[α, β, θ]` array, in that order.
    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.theta]
    }
}

/// A probability level restricted to the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QuantileLevel(f64);

impl QuantileLevel {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && 0.0 < q && q < 1.0 {
            Ok(Self(q))
        } else {
            Err(Error::Domain(format!(
                "quantile level must lie in (0, 1), got {q}"
            )))
        }
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

/// A positive moment order r, for E[X^r].
///
/// Existence is a property of (r, params): the right tail has Pareto index
/// θ when α > 0 and 2θ when α = 0, so the moment exists iff r < θ
/// (respectively r < 2θ).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MomentOrder(f64);

impl MomentOrder {
    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && r > 0.0 {
            Ok(Self(r))
        } else {
            Err(Error::Domain(format!("moment order must be > 0, got {r}")))
        }
    }

    pub fn get(&self) -> f64 {
        self.0
    }

    /// The tail-index bound below which E[X^r] is finite for `p`.
    pub fn existence_bound(p: &Params) -> f64 {
        if p.alpha() > 0.0 {
            p.theta()
        } else {
            2.0 * p.theta()
        }
    }

    /// Whether E[X^r] exists under `p`.
    pub fn exists_for(&self, p: &Params) -> bool {
        self.0 < Self::existence_bound(p)
    }
}
