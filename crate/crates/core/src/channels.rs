//! Observation channels `W(y|x)`.
//!
//! [`ClaytonChannel`] is the copula channel the simulator is built around:
//!
//! ```text
//! W_α(y|x) = (1−α)(xy)^{α−1} (x^α + y^α − 1)^{1/α−2},   (1−x^α)^{1/α} ≤ y ≤ 1
//! ```
//!
//! for `1/2 < α < 1`. It diverges at the lower endpoint and equals
//! `(1−α)x^{−α}` at `y = 1`. Its conditional CDF and quantile are
//!
//! ```text
//! F(y|x) = x^{α−1} (x^α + y^α − 1)^{(1−α)/α}
//! Q(v|x) = [ (v·x^{1−α})^{α/(1−α)} + 1 − x^α ]^{1/α}
//! ```
//!
//! The remaining channels are analytic fixtures: a uniform window (the
//! estimator and Chernoff oracle), a triangular window whose density vanishes
//! at the endpoints, and a channel whose output ignores `x` altogether.
//!
//! Trait methods take `x ∈ [0, 1]` on trust; the `obs_*` free functions check
//! the domain `(0, 1]` and return [`CeoError::Domain`] otherwise.

use std::fmt;

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CeoError, Result};

/// Value returned for the density exactly at a divergent endpoint.
pub const DENSITY_CAP: f64 = 1e300;

pub trait ObservationChannel: fmt::Debug + Send + Sync {
    /// Support endpoints `(e_l(x), e_u(x))`.
    fn support(&self, x: f64) -> (f64, f64);

    fn density(&self, y: f64, x: f64) -> f64;

    /// Density at `e_l(x) + t`, evaluated without forming `e_l(x) + t` when
    /// the channel can do better.
    fn density_above_lower(&self, t: f64, x: f64) -> f64 {
        let (lower, _) = self.support(x);
        self.density(lower + t, x)
    }

    fn cdf(&self, y: f64, x: f64) -> f64;

    fn quantile(&self, v: f64, x: f64) -> f64;

    /// Union of the supports over `x ∈ [0, 1]`.
    fn output_range(&self) -> (f64, f64);

    /// Closed-form `x` with `e_l(x) + e_u(x) = s`, when one is known and `s`
    /// is in range.
    fn support_sum_inverse(&self, _s: f64) -> Option<f64> {
        None
    }

    fn describe(&self) -> String;
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x <= 1.0 {
        Ok(())
    } else {
        Err(CeoError::Domain(x))
    }
}

pub fn obs_density<C: ObservationChannel + ?Sized>(channel: &C, y: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(channel.density(y, x))
}

pub fn obs_cdf<C: ObservationChannel + ?Sized>(channel: &C, y: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(channel.cdf(y, x))
}

pub fn obs_quantile<C: ObservationChannel + ?Sized>(channel: &C, v: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    if !(0.0..=1.0).contains(&v) {
        return Err(CeoError::param(format!(
            "quantile level {v} outside [0, 1]"
        )));
    }
    Ok(channel.quantile(v, x))
}

pub fn obs_support<C: ObservationChannel + ?Sized>(channel: &C, x: f64) -> Result<(f64, f64)> {
    check_x(x)?;
    Ok(channel.support(x))
}

/// One draw from `W(·|x)` by inverse-CDF sampling.
pub fn sample_observation<C, R>(channel: &C, x: f64, rng: &mut R) -> f64
where
    C: ObservationChannel + ?Sized,
    R: Rng + ?Sized,
{
    let v: f64 = rng.sample(Open01);
    channel.quantile(v, x)
}

/// `count` conditionally i.i.d. draws from `W(·|x)`.
pub fn obs_sample<C, R>(channel: &C, x: f64, count: usize, rng: &mut R) -> Result<Vec<f64>>
where
    C: ObservationChannel + ?Sized,
    R: Rng + ?Sized,
{
    check_x(x)?;
    if count == 0 {
        return Err(CeoError::param("need at least one observation"));
    }
    Ok((0..count)
        .map(|_| sample_observation(channel, x, rng))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClaytonChannel {
    alpha: f64,
}

impl ClaytonChannel {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.5 && alpha < 1.0) {
            return Err(CeoError::param(format!(
                "Clayton alpha must lie in (1/2, 1), got {alpha}"
            )));
        }
        Ok(ClaytonChannel { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `e_l(x) = (1 − x^α)^{1/α}`.
    pub fn lower(&self, x: f64) -> f64 {
        (1.0 - x.powf(self.alpha)).max(0.0).powf(1.0 / self.alpha)
    }

    /// `x^α + y^α − 1` at `y = e_l(x) + t`, computed as `y^α − e_l^α`.
    fn core(&self, t: f64, lower: f64) -> f64 {
        if lower > 0.0 {
            lower.powf(self.alpha) * (self.alpha * (t / lower).ln_1p()).exp_m1()
        } else {
            t.powf(self.alpha)
        }
    }
}

impl ObservationChannel for ClaytonChannel {
    fn support(&self, x: f64) -> (f64, f64) {
        (self.lower(x), 1.0)
    }

    fn density(&self, y: f64, x: f64) -> f64 {
        let lower = self.lower(x);
        if y < lower || y > 1.0 {
            return 0.0;
        }
        self.density_above_lower(y - lower, x)
    }

    fn density_above_lower(&self, t: f64, x: f64) -> f64 {
        let a = self.alpha;
        let lower = self.lower(x);
        let y = lower + t;
        if t < 0.0 || y > 1.0 {
            return 0.0;
        }
        let s = self.core(t, lower);
        if s <= 0.0 {
            return DENSITY_CAP;
        }
        let value = (1.0 - a) * (x * y).powf(a - 1.0) * s.powf(1.0 / a - 2.0);
        value.min(DENSITY_CAP)
    }

    fn cdf(&self, y: f64, x: f64) -> f64 {
        let a = self.alpha;
        let lower = self.lower(x);
        if y <= lower {
            return 0.0;
        }
        if y >= 1.0 {
            return 1.0;
        }
        let s = self.core(y - lower, lower);
        (x.powf(a - 1.0) * s.powf((1.0 - a) / a)).clamp(0.0, 1.0)
    }

    fn quantile(&self, v: f64, x: f64) -> f64 {
        let a = self.alpha;
        if v >= 1.0 {
            return 1.0;
        }
        let lower = self.lower(x);
        if v <= 0.0 {
            return lower;
        }
        // y^α = e_l^α + s; for tiny v the offset y − e_l is far below one ulp
        // of y, so F(Q(v)) loses relative accuracy like ε/s there
        let s = (v * x.powf(1.0 - a)).powf(a / (1.0 - a));
        let y = if lower > 0.0 {
            lower * ((s / lower.powf(a)).ln_1p() / a).exp()
        } else {
            s.powf(1.0 / a)
        };
        y.clamp(lower, 1.0)
    }

    fn output_range(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn support_sum_inverse(&self, s: f64) -> Option<f64> {
        let lower = s - 1.0;
        if !(0.0..=1.0).contains(&lower) {
            return None;
        }
        Some(
            (1.0 - lower.powf(self.alpha))
                .max(0.0)
                .powf(1.0 / self.alpha),
        )
    }

    fn describe(&self) -> String {
        format!("clayton(alpha={})", self.alpha)
    }
}

/// `Y = X + Uniform[−w, w]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformWindowChannel {
    half_width: f64,
}

impl UniformWindowChannel {
    pub fn new(half_width: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(CeoError::param(format!(
                "window half-width must be positive, got {half_width}"
            )));
        }
        Ok(UniformWindowChannel { half_width })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }
}

impl ObservationChannel for UniformWindowChannel {
    fn support(&self, x: f64) -> (f64, f64) {
        (x - self.half_width, x + self.half_width)
    }

    fn density(&self, y: f64, x: f64) -> f64 {
        if (y - x).abs() <= self.half_width {
            0.5 / self.half_width
        } else {
            0.0
        }
    }

    fn density_above_lower(&self, t: f64, _x: f64) -> f64 {
        if (0.0..=2.0 * self.half_width).contains(&t) {
            0.5 / self.half_width
        } else {
            0.0
        }
    }

    fn cdf(&self, y: f64, x: f64) -> f64 {
        ((y - x + self.half_width) / (2.0 * self.half_width)).clamp(0.0, 1.0)
    }

    fn quantile(&self, v: f64, x: f64) -> f64 {
        x - self.half_width + 2.0 * self.half_width * v.clamp(0.0, 1.0)
    }

    fn output_range(&self) -> (f64, f64) {
        (-self.half_width, 1.0 + self.half_width)
    }

    fn support_sum_inverse(&self, s: f64) -> Option<f64> {
        let x = 0.5 * s;
        (0.0..=1.0).contains(&x).then_some(x)
    }

    fn describe(&self) -> String {
        format!("window(w={})", self.half_width)
    }
}

/// Symmetric triangular window on `[x − w, x + w]`; its density vanishes at
/// both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularWindowChannel {
    half_width: f64,
}

impl TriangularWindowChannel {
    pub fn new(half_width: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(CeoError::param(format!(
                "window half-width must be positive, got {half_width}"
            )));
        }
        Ok(TriangularWindowChannel { half_width })
    }
}

impl ObservationChannel for TriangularWindowChannel {
    fn support(&self, x: f64) -> (f64, f64) {
        (x - self.half_width, x + self.half_width)
    }

    fn density(&self, y: f64, x: f64) -> f64 {
        let w = self.half_width;
        ((w - (y - x).abs()) / (w * w)).max(0.0)
    }

    fn cdf(&self, y: f64, x: f64) -> f64 {
        let w = self.half_width;
        let d = y - x;
        if d <= -w {
            0.0
        } else if d <= 0.0 {
            (d + w).powi(2) / (2.0 * w * w)
        } else if d < w {
            1.0 - (w - d).powi(2) / (2.0 * w * w)
        } else {
            1.0
        }
    }

    fn quantile(&self, v: f64, x: f64) -> f64 {
        let w = self.half_width;
        let v = v.clamp(0.0, 1.0);
        if v <= 0.5 {
            x - w + w * (2.0 * v).sqrt()
        } else {
            x + w - w * (2.0 * (1.0 - v)).sqrt()
        }
    }

    fn output_range(&self) -> (f64, f64) {
        (-self.half_width, 1.0 + self.half_width)
    }

    fn support_sum_inverse(&self, s: f64) -> Option<f64> {
        let x = 0.5 * s;
        (0.0..=1.0).contains(&x).then_some(x)
    }

    fn describe(&self) -> String {
        format!("triangular(w={})", self.half_width)
    }
}

/// `Y ~ Uniform[0, 1]` regardless of `x`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct UninformativeChannel;

impl ObservationChannel for UninformativeChannel {
    fn support(&self, _x: f64) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn density(&self, y: f64, _x: f64) -> f64 {
        if (0.0..=1.0).contains(&y) {
            1.0
        } else {
            0.0
        }
    }

    fn cdf(&self, y: f64, _x: f64) -> f64 {
        y.clamp(0.0, 1.0)
    }

    fn quantile(&self, v: f64, _x: f64) -> f64 {
        v.clamp(0.0, 1.0)
    }

    fn output_range(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn describe(&self) -> String {
        "uninformative".to_string()
    }
}

/// The channels selectable from configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Channel {
    Clayton(ClaytonChannel),
    Window(UniformWindowChannel),
}

impl Channel {
    /// Parses `clayton` (using `alpha`) or `window:W`.
    pub fn parse(spec: &str, alpha: f64) -> Result<Self> {
        let spec = spec.trim();
        if spec == "clayton" {
            return Ok(Channel::Clayton(ClaytonChannel::new(alpha)?));
        }
        if let Some(w) = spec.strip_prefix("window:") {
            let w: f64 = w
                .parse()
                .map_err(|_| CeoError::Config(format!("bad window half-width in '{spec}'")))?;
            return Ok(Channel::Window(UniformWindowChannel::new(w)?));
        }
        Err(CeoError::Config(format!(
            "unknown channel '{spec}', expected clayton or window:W"
        )))
    }

    fn inner(&self) -> &dyn ObservationChannel {
        match self {
            Channel::Clayton(c) => c,
            Channel::Window(w) => w,
        }
    }
}

impl ObservationChannel for Channel {
    fn support(&self, x: f64) -> (f64, f64) {
        self.inner().support(x)
    }
    fn density(&self, y: f64, x: f64) -> f64 {
        self.inner().density(y, x)
    }
    fn density_above_lower(&self, t: f64, x: f64) -> f64 {
        self.inner().density_above_lower(t, x)
    }
    fn cdf(&self, y: f64, x: f64) -> f64 {
        self.inner().cdf(y, x)
    }
    fn quantile(&self, v: f64, x: f64) -> f64 {
        self.inner().quantile(v, x)
    }
    fn output_range(&self) -> (f64, f64) {
        self.inner().output_range()
    }
    fn support_sum_inverse(&self, s: f64) -> Option<f64> {
        self.inner().support_sum_inverse(s)
    }
    fn describe(&self) -> String {
        self.inner().describe()
    }
}

/// A one-dimensional law with bounded support.
pub trait Law: Sync {
    fn support(&self) -> (f64, f64);
    fn pdf(&self, y: f64) -> f64;
    fn pdf_above_lower(&self, t: f64) -> f64 {
        self.pdf(self.support().0 + t)
    }
    fn cdf(&self, y: f64) -> f64;
    fn quantile(&self, v: f64) -> f64;

    /// Density at `left + t`, measured from the law's own lower endpoint when
    /// `left` lies at or above it.
    fn pdf_from(&self, left: f64, t: f64) -> f64 {
        let lower = self.support().0;
        if left >= lower {
            self.pdf_above_lower((left - lower) + t)
        } else {
            self.pdf(left + t)
        }
    }
}

/// `W(·|x)` for a fixed `x`, viewed as a [`Law`].
#[derive(Clone, Copy)]
pub struct ChannelAt<'a> {
    channel: &'a dyn ObservationChannel,
    x: f64,
}

impl<'a> ChannelAt<'a> {
    pub fn new(channel: &'a dyn ObservationChannel, x: f64) -> Result<Self> {
        check_x(x)?;
        Ok(ChannelAt { channel, x })
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

impl Law for ChannelAt<'_> {
    fn support(&self) -> (f64, f64) {
        self.channel.support(self.x)
    }
    fn pdf(&self, y: f64) -> f64 {
        self.channel.density(y, self.x)
    }
    fn pdf_above_lower(&self, t: f64) -> f64 {
        self.channel.density_above_lower(t, self.x)
    }
    fn cdf(&self, y: f64) -> f64 {
        self.channel.cdf(y, self.x)
    }
    fn quantile(&self, v: f64) -> f64 {
        self.channel.quantile(v, self.x)
    }
}

/// `Uniform[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformLaw {
    lo: f64,
    hi: f64,
}

impl UniformLaw {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi && lo.is_finite() && hi.is_finite()) {
            return Err(CeoError::param(format!(
                "empty uniform support [{lo}, {hi}]"
            )));
        }
        Ok(UniformLaw { lo, hi })
    }
}

impl Law for UniformLaw {
    fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
    fn pdf(&self, y: f64) -> f64 {
        if (self.lo..=self.hi).contains(&y) {
            1.0 / (self.hi - self.lo)
        } else {
            0.0
        }
    }
    fn pdf_above_lower(&self, t: f64) -> f64 {
        if (0.0..=self.hi - self.lo).contains(&t) {
            1.0 / (self.hi - self.lo)
        } else {
            0.0
        }
    }
    fn cdf(&self, y: f64) -> f64 {
        ((y - self.lo) / (self.hi - self.lo)).clamp(0.0, 1.0)
    }
    fn quantile(&self, v: f64) -> f64 {
        self.lo + (self.hi - self.lo) * v.clamp(0.0, 1.0)
    }
}
