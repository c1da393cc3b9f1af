//! Bounded-support source priors on `[0, 1]`.

use std::fmt;
use std::str::FromStr;

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CeoError, Result};
use crate::quad;

/// Bisection width used when inverting the quadrature CDF.
const QUANTILE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SourceKind {
    Uniform,
    TruncatedGaussian { mu: f64, sigma: f64 },
}

/// Source density `f_X` supported on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceModel {
    kind: SourceKind,
    // ∫_0^1 of the unnormalized density
    norm: f64,
}

impl SourceModel {
    pub fn uniform() -> Self {
        SourceModel {
            kind: SourceKind::Uniform,
            norm: 1.0,
        }
    }

    pub fn truncated_gaussian(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !(sigma.is_finite() && sigma > 0.0) {
            return Err(CeoError::param(format!(
                "truncated gaussian needs finite mu and sigma > 0, got ({mu}, {sigma})"
            )));
        }
        let kind = SourceKind::TruncatedGaussian { mu, sigma };
        let norm = quad::integrate(|x| unnormalized(kind, x), 0.0, 1.0);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(CeoError::param(format!(
                "truncated gaussian ({mu}, {sigma}) has no mass on [0, 1]"
            )));
        }
        Ok(SourceModel { kind, norm })
    }

    pub fn from_kind(kind: SourceKind) -> Result<Self> {
        match kind {
            SourceKind::Uniform => Ok(Self::uniform()),
            SourceKind::TruncatedGaussian { mu, sigma } => Self::truncated_gaussian(mu, sigma),
        }
    }

    pub fn kind(&self) -> SourceKind {
        self.kind
    }

    pub fn normalization(&self) -> f64 {
        self.norm
    }

    /// `f_X(x)`; zero outside `[0, 1]`.
    pub fn pdf(&self, x: f64) -> f64 {
        if !(0.0..=1.0).contains(&x) {
            return 0.0;
        }
        unnormalized(self.kind, x) / self.norm
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        match self.kind {
            SourceKind::Uniform => x,
            SourceKind::TruncatedGaussian { .. } => {
                let mass = quad::integrate(|t| unnormalized(self.kind, t), 0.0, x);
                (mass / self.norm).clamp(0.0, 1.0)
            }
        }
    }

    /// Inverse CDF. Closed form for the uniform prior, bisection on the
    /// quadrature CDF otherwise.
    pub fn quantile(&self, v: f64) -> f64 {
        let v = v.clamp(0.0, 1.0);
        match self.kind {
            SourceKind::Uniform => v,
            SourceKind::TruncatedGaussian { .. } => {
                let (mut lo, mut hi) = (0.0, 1.0);
                while hi - lo > QUANTILE_TOL {
                    let mid = 0.5 * (lo + hi);
                    if self.cdf(mid) < v {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }

    /// One draw in the open interval `(0, 1)`.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let v: f64 = rng.sample(Open01);
        match self.kind {
            SourceKind::Uniform => v,
            // keep away from the closed endpoints that bisection could return
            SourceKind::TruncatedGaussian { .. } => self
                .quantile(v)
                .clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sample_one(rng)).collect()
    }

    pub fn mean(&self) -> f64 {
        match self.kind {
            SourceKind::Uniform => 0.5,
            SourceKind::TruncatedGaussian { .. } => quad::integrate(|x| x * self.pdf(x), 0.0, 1.0),
        }
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        match self.kind {
            SourceKind::Uniform => 1.0 / 12.0,
            SourceKind::TruncatedGaussian { .. } => {
                quad::integrate(|x| (x - m) * (x - m) * self.pdf(x), 0.0, 1.0)
            }
        }
    }
}

fn unnormalized(kind: SourceKind, x: f64) -> f64 {
    match kind {
        SourceKind::Uniform => 1.0,
        SourceKind::TruncatedGaussian { mu, sigma } => {
            let z = (x - mu) / sigma;
            (-0.5 * z * z).exp()
        }
    }
}

impl fmt::Display for SourceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SourceKind::Uniform => write!(f, "uniform"),
            SourceKind::TruncatedGaussian { mu, sigma } => write!(f, "tgauss:{mu}:{sigma}"),
        }
    }
}

/// Parses `uniform` or `tgauss:MU:SIGMA`.
impl FromStr for SourceModel {
    type Err = CeoError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["uniform"] => Ok(SourceModel::uniform()),
            ["tgauss", mu, sigma] => {
                let mu: f64 = mu
                    .parse()
                    .map_err(|_| CeoError::Config(format!("bad mu in source '{s}'")))?;
                let sigma: f64 = sigma
                    .parse()
                    .map_err(|_| CeoError::Config(format!("bad sigma in source '{s}'")))?;
                SourceModel::truncated_gaussian(mu, sigma)
            }
            _ => Err(CeoError::Config(format!(
                "unknown source '{s}', expected uniform or tgauss:MU:SIGMA"
            ))),
        }
    }
}
