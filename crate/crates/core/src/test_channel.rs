//! Forward test channels `Y → U` and a certifier for their endpoint and Lipschitz conditions.
//!
//! A [`KPeakTestChannel`] adds discrete noise `N ∈ {n_1 < … < n_k}` with
//! probabilities `p_l`, so that given `X = x`
//!
//! ```text
//! f_{U|X}(u|x) = Σ_l p_l W(u − n_l | x),   u ∈ [a(x), b(x)] = [e_l(x) + n_1, e_u(x) + n_k].
//! ```
//!
//! The CEO decodes through `l = (a + b)^{-1}`; [`check_property_one`]
//! certifies numerically that the induced density keeps a floor `δ` on
//! `ε`-bands at both ends of its support and that `l` is `K`-Lipschitz on the
//! checked range.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{sample_observation, ObservationChannel};
use crate::error::{CeoError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KPeakSpec", into = "KPeakSpec")]
pub struct KPeakTestChannel {
    offsets: Vec<f64>,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct KPeakSpec {
    offsets: Vec<f64>,
    probs: Vec<f64>,
}

impl TryFrom<KPeakSpec> for KPeakTestChannel {
    type Error = CeoError;
    fn try_from(spec: KPeakSpec) -> Result<Self> {
        KPeakTestChannel::new(spec.offsets, spec.probs)
    }
}

impl From<KPeakTestChannel> for KPeakSpec {
    fn from(tc: KPeakTestChannel) -> Self {
        KPeakSpec {
            offsets: tc.offsets,
            probs: tc.probs,
        }
    }
}

impl KPeakTestChannel {
    pub fn new(offsets: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if offsets.len() < 2 {
            return Err(CeoError::param(format!(
                "k-peak noise needs k ≥ 2 peaks, got {}",
                offsets.len()
            )));
        }
        if offsets.len() != probs.len() {
            return Err(CeoError::param(format!(
                "{} offsets but {} probabilities",
                offsets.len(),
                probs.len()
            )));
        }
        if offsets.iter().any(|n| !n.is_finite()) || offsets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CeoError::param(format!(
                "peak offsets must be finite and strictly increasing: {offsets:?}"
            )));
        }
        if probs.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
            return Err(CeoError::param(format!(
                "peak probabilities must be positive: {probs:?}"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(CeoError::param(format!(
                "peak probabilities sum to {total}, not 1"
            )));
        }
        let mut acc = 0.0;
        let cumulative = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(KPeakTestChannel {
            offsets,
            probs,
            cumulative,
        })
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn k(&self) -> usize {
        self.offsets.len()
    }

    fn first(&self) -> f64 {
        self.offsets[0]
    }

    fn last(&self) -> f64 {
        self.offsets[self.offsets.len() - 1]
    }

    pub fn choose_peak<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let v: f64 = rng.random();
        self.cumulative
            .iter()
            .position(|&c| v < c)
            .unwrap_or(self.k() - 1)
    }

    /// `y + n_l` with probability `p_l`.
    pub fn apply<R: Rng + ?Sized>(&self, y: f64, rng: &mut R) -> f64 {
        y + self.offsets[self.choose_peak(rng)]
    }

    /// One draw of `U` given `X = x`.
    pub fn sample_output<C, R>(&self, channel: &C, x: f64, rng: &mut R) -> f64
    where
        C: ObservationChannel + ?Sized,
        R: Rng + ?Sized,
    {
        let y = sample_observation(channel, x, rng);
        self.apply(y, rng)
    }

    /// `f_{U|X}(u|x) = Σ_l p_l W(u − n_l | x)`.
    pub fn induced_density<C: ObservationChannel + ?Sized>(
        &self,
        channel: &C,
        u: f64,
        x: f64,
    ) -> f64 {
        self.offsets
            .iter()
            .zip(&self.probs)
            .map(|(n, p)| p * channel.density(u - n, x))
            .sum()
    }

    pub fn induced_cdf<C: ObservationChannel + ?Sized>(&self, channel: &C, u: f64, x: f64) -> f64 {
        self.offsets
            .iter()
            .zip(&self.probs)
            .map(|(n, p)| p * channel.cdf(u - n, x))
            .sum::<f64>()
            .clamp(0.0, 1.0)
    }

    /// `(a(x), b(x)) = (e_l(x) + n_1, e_u(x) + n_k)`.
    pub fn endpoints<C: ObservationChannel + ?Sized>(&self, channel: &C, x: f64) -> (f64, f64) {
        let (lo, hi) = channel.support(x);
        (lo + self.first(), hi + self.last())
    }

    /// For each adjacent pair of peaks, whether their shifted supports
    /// overlap at this `x`.
    pub fn peak_overlaps<C: ObservationChannel + ?Sized>(&self, channel: &C, x: f64) -> Vec<bool> {
        let (lo, hi) = channel.support(x);
        self.offsets
            .windows(2)
            .map(|w| hi + w[0] >= lo + w[1])
            .collect()
    }

    /// `l(m)`: the `x ∈ [0, 1]` with `a(x) + b(x) = m`. Sums outside the range
    /// of `a + b` are clamped to the nearer end and flagged.
    pub fn midsum_inverse<C: ObservationChannel + ?Sized>(
        &self,
        channel: &C,
        m: f64,
    ) -> MidsumInverse {
        let shift = self.first() + self.last();
        let sum_at = |x: f64| {
            let (lo, hi) = channel.support(x);
            lo + hi + shift
        };
        if let Some(x) = channel.support_sum_inverse(m - shift) {
            return MidsumInverse {
                x: x.clamp(0.0, 1.0),
                in_range: true,
            };
        }
        let (s0, s1) = (sum_at(0.0), sum_at(1.0));
        let (lo_s, hi_s) = (s0.min(s1), s0.max(s1));
        if m <= lo_s || m >= hi_s {
            let near_zero = (m - s0).abs() <= (m - s1).abs();
            let exact = m == lo_s || m == hi_s;
            return MidsumInverse {
                x: if near_zero { 0.0 } else { 1.0 },
                in_range: exact,
            };
        }
        let increasing = s1 > s0;
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (sum_at(mid) < m) == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        MidsumInverse {
            x: 0.5 * (lo + hi),
            in_range: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MidsumInverse {
    pub x: f64,
    /// False when `m` fell outside the range of `a + b` and was clamped.
    pub in_range: bool,
}

/// Output independent of the input: `U ~ Uniform[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureNoiseChannel {
    pub lo: f64,
    pub hi: f64,
}

impl PureNoiseChannel {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi && lo.is_finite() && hi.is_finite()) {
            return Err(CeoError::param(format!("empty noise support [{lo}, {hi}]")));
        }
        Ok(PureNoiseChannel { lo, hi })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.lo + (self.hi - self.lo) * rng.random::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TestChannel {
    KPeak(KPeakTestChannel),
    PureNoise(PureNoiseChannel),
}

impl TestChannel {
    /// Range of `U` over all inputs.
    pub fn output_range<C: ObservationChannel + ?Sized>(&self, channel: &C) -> (f64, f64) {
        match self {
            TestChannel::KPeak(tc) => {
                let (lo, hi) = channel.output_range();
                (lo + tc.first(), hi + tc.last())
            }
            TestChannel::PureNoise(n) => (n.lo, n.hi),
        }
    }

    pub fn as_kpeak(&self) -> Option<&KPeakTestChannel> {
        match self {
            TestChannel::KPeak(tc) => Some(tc),
            TestChannel::PureNoise(_) => None,
        }
    }
}

/// Where and how densely the endpoint and Lipschitz conditions are checked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificationGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub x_points: usize,
    /// `ε` as a fraction of `min_x (b(x) − a(x))`.
    pub epsilon_fraction: f64,
    /// Band points closer than this to `a(x)` or `b(x)` are not evaluated.
    pub endpoint_guard: f64,
    pub band_points: usize,
    pub m_points: usize,
    pub lipschitz_safety: f64,
}

impl Default for CertificationGrid {
    fn default() -> Self {
        CertificationGrid {
            x_min: 0.05,
            x_max: 0.95,
            x_points: 181,
            epsilon_fraction: 0.05,
            endpoint_guard: 1e-6,
            band_points: 33,
            m_points: 4001,
            lipschitz_safety: 1.1,
        }
    }
}

impl fmt::Display for CertificationGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x in [{}, {}] ({} points), eps fraction {}, guard {:e}, {} band points, {} m points, safety {}",
            self.x_min,
            self.x_max,
            self.x_points,
            self.epsilon_fraction,
            self.endpoint_guard,
            self.band_points,
            self.m_points,
            self.lipschitz_safety
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyOneCertificate {
    /// Certified Lipschitz constant (observed slope times the safety factor).
    pub lipschitz_k: f64,
    /// Largest difference quotient of `l` seen on the m-grid.
    pub lipschitz_observed: f64,
    pub endpoint_floor_delta: f64,
    pub endpoint_width_epsilon: f64,
    pub checked_grid: String,
    /// Grid points at which adjacent peaks overlap.
    pub overlapping_x: Vec<f64>,
}

impl PropertyOneCertificate {
    /// Builds a certificate from explicit constants, e.g. analytic ones.
    pub fn new(
        lipschitz_k: f64,
        delta: f64,
        epsilon: f64,
        checked_grid: impl Into<String>,
    ) -> Result<Self> {
        for (name, v) in [("K", lipschitz_k), ("delta", delta), ("epsilon", epsilon)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CeoError::param(format!(
                    "certificate {name} must be positive, got {v}"
                )));
            }
        }
        Ok(PropertyOneCertificate {
            lipschitz_k,
            lipschitz_observed: lipschitz_k,
            endpoint_floor_delta: delta,
            endpoint_width_epsilon: epsilon,
            checked_grid: checked_grid.into(),
            overlapping_x: Vec::new(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    UnboundedSupport { x: f64 },
    VanishingEndpoint { x: f64, side: Side },
    NonPositiveFloor { x: f64, side: Side, density: f64 },
    NonMonotoneSum { x: f64 },
    BadGrid { reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnboundedSupport { x } => write!(f, "support not bounded at x={x}"),
            Violation::VanishingEndpoint { x, side } => {
                write!(f, "density vanishes at the {side:?} endpoint, x={x}")
            }
            Violation::NonPositiveFloor { x, side, density } => {
                write!(f, "density {density:e} ≤ 0 on the {side:?} band, x={x}")
            }
            Violation::NonMonotoneSum { x } => write!(f, "a+b not strictly monotone near x={x}"),
            Violation::BadGrid { reason } => write!(f, "bad certification grid: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self
            .violations
            .iter()
            .take(8)
            .map(|v| v.to_string())
            .collect();
        write!(
            f,
            "{} violation(s): {}",
            self.violations.len(),
            shown.join("; ")
        )?;
        if self.violations.len() > 8 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

/// Log-log slope (per decade) above which a density that keeps shrinking
/// toward an endpoint is treated as vanishing there.
const VANISHING_SLOPE: f64 = 0.3;

struct PointCheck {
    x: f64,
    width: f64,
    sum: f64,
    violations: Vec<Violation>,
}

/// Numerically certifies the endpoint floor and Lipschitz conditions for `channel` followed by `tc` on `grid`.
pub fn check_property_one<C: ObservationChannel + ?Sized>(
    tc: &KPeakTestChannel,
    channel: &C,
    grid: &CertificationGrid,
) -> std::result::Result<PropertyOneCertificate, ViolationReport> {
    let bad = |reason: String| ViolationReport {
        violations: vec![Violation::BadGrid { reason }],
    };
    if !(grid.x_min > 0.0 && grid.x_min < grid.x_max && grid.x_max <= 1.0) {
        return Err(bad(format!(
            "x range [{}, {}] must sit inside (0, 1]",
            grid.x_min, grid.x_max
        )));
    }
    if grid.x_points < 3 || grid.band_points < 2 || grid.m_points < 3 {
        return Err(bad(
            "need ≥ 3 x points, ≥ 2 band points and ≥ 3 m points".into()
        ));
    }
    if !(grid.epsilon_fraction > 0.0 && grid.epsilon_fraction < 0.5)
        || !(grid.endpoint_guard > 0.0)
        || !(grid.lipschitz_safety >= 1.0)
    {
        return Err(bad(
            "epsilon fraction must be in (0, 1/2), guard > 0, safety ≥ 1".into(),
        ));
    }
    let step = (grid.x_max - grid.x_min) / (grid.x_points - 1) as f64;
    let xs: Vec<f64> = (0..grid.x_points)
        .map(|i| grid.x_min + step * i as f64)
        .collect();

    // (i) bounded support, non-vanishing endpoints
    let checks: Vec<PointCheck> = xs
        .par_iter()
        .map(|&x| {
            let (a, b) = tc.endpoints(channel, x);
            let mut violations = Vec::new();
            if !(a.is_finite() && b.is_finite() && a < b) {
                violations.push(Violation::UnboundedSupport { x });
            } else {
                let g = grid.endpoint_guard;
                let lower =
                    [a + g, a + 10.0 * g, a + 100.0 * g].map(|u| tc.induced_density(channel, u, x));
                let upper =
                    [b - g, b - 10.0 * g, b - 100.0 * g].map(|u| tc.induced_density(channel, u, x));
                for (side, d) in [(Side::Lower, lower), (Side::Upper, upper)] {
                    if vanishing(&d) {
                        violations.push(Violation::VanishingEndpoint { x, side });
                    }
                }
            }
            PointCheck {
                x,
                width: b - a,
                sum: a + b,
                violations,
            }
        })
        .collect();
    let mut violations: Vec<Violation> = checks
        .iter()
        .flat_map(|c| c.violations.iter().cloned())
        .collect();
    if !violations.is_empty() {
        return Err(ViolationReport { violations });
    }

    // (ii) ε from the narrowest support, δ as the band infimum
    let min_width = checks.iter().map(|c| c.width).fold(f64::INFINITY, f64::min);
    let epsilon = grid.epsilon_fraction * min_width;
    let band_minima: Vec<(f64, f64, f64)> = xs
        .par_iter()
        .map(|&x| {
            let (a, b) = tc.endpoints(channel, x);
            let g = grid.endpoint_guard.min(0.5 * epsilon);
            let n = grid.band_points - 1;
            let band = |start: f64, dir: f64| {
                (0..=n)
                    .map(|j| {
                        let off = g + (epsilon - g) * j as f64 / n as f64;
                        tc.induced_density(channel, start + dir * off, x)
                    })
                    .fold(f64::INFINITY, f64::min)
            };
            (x, band(a, 1.0), band(b, -1.0))
        })
        .collect();
    let mut delta = f64::INFINITY;
    for &(x, lo_min, hi_min) in &band_minima {
        for (side, d) in [(Side::Lower, lo_min), (Side::Upper, hi_min)] {
            if !(d > 0.0) {
                violations.push(Violation::NonPositiveFloor {
                    x,
                    side,
                    density: d,
                });
            }
            delta = delta.min(d);
        }
    }

    // (iii) strict monotonicity of a+b, then K from difference quotients of l
    let diffs: Vec<f64> = checks.windows(2).map(|w| w[1].sum - w[0].sum).collect();
    let ups = diffs.iter().filter(|&&d| d > 1e-12).count();
    let increasing = ups * 2 >= diffs.len();
    for (i, &d) in diffs.iter().enumerate() {
        let ok = if increasing { d > 1e-12 } else { d < -1e-12 };
        if !ok {
            violations.push(Violation::NonMonotoneSum { x: checks[i].x });
        }
    }
    if !violations.is_empty() {
        return Err(ViolationReport { violations });
    }

    let m_lo = checks.first().unwrap().sum.min(checks.last().unwrap().sum);
    let m_hi = checks.first().unwrap().sum.max(checks.last().unwrap().sum);
    let dm = (m_hi - m_lo) / (grid.m_points - 1) as f64;
    let ls: Vec<f64> = (0..grid.m_points)
        .into_par_iter()
        .map(|j| tc.midsum_inverse(channel, m_lo + dm * j as f64).x)
        .collect();
    let observed = ls
        .windows(2)
        .map(|w| (w[1] - w[0]).abs() / dm)
        .fold(0.0, f64::max);
    if !(observed > 0.0 && observed.is_finite()) {
        return Err(ViolationReport {
            violations: vec![Violation::NonMonotoneSum { x: grid.x_min }],
        });
    }

    let overlapping_x = xs
        .iter()
        .copied()
        .filter(|&x| tc.peak_overlaps(channel, x).into_iter().any(|o| o))
        .collect();
    Ok(PropertyOneCertificate {
        lipschitz_k: grid.lipschitz_safety * observed,
        lipschitz_observed: observed,
        endpoint_floor_delta: delta,
        endpoint_width_epsilon: epsilon,
        checked_grid: grid.to_string(),
        overlapping_x,
    })
}

/// Densities at guard offsets `g, 10g, 100g` from an endpoint; vanishing if
/// the density keeps decaying toward the endpoint by at least
/// [`VANISHING_SLOPE`] per decade, or is already zero there.
fn vanishing(d: &[f64; 3]) -> bool {
    if !(d[0] > 0.0) {
        return true;
    }
    if !(d[1] > 0.0 && d[2] > 0.0) {
        return false;
    }
    let s1 = (d[1] / d[0]).log10();
    let s2 = (d[2] / d[1]).log10();
    s1 >= VANISHING_SLOPE && s2 >= VANISHING_SLOPE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{
        ClaytonChannel, TriangularWindowChannel, UniformWindowChannel, UninformativeChannel,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_peak() -> KPeakTestChannel {
        KPeakTestChannel::new(vec![0.0, 2.0], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(KPeakTestChannel::new(vec![0.0], vec![1.0]).is_err());
        assert!(KPeakTestChannel::new(vec![0.0, 2.0], vec![1.0, 0.0]).is_err());
        assert!(KPeakTestChannel::new(vec![2.0, 0.0], vec![0.5, 0.5]).is_err());
        assert!(KPeakTestChannel::new(vec![0.0, 0.0], vec![0.5, 0.5]).is_err());
        assert!(KPeakTestChannel::new(vec![0.0, 2.0], vec![0.5, 0.6]).is_err());
        assert!(KPeakTestChannel::new(vec![0.0, 2.0], vec![0.5]).is_err());
        assert!(KPeakTestChannel::new(vec![-1.0, 0.0, 3.0], vec![0.2, 0.3, 0.5]).is_ok());
    }

    #[test]
    fn apply_lands_on_a_peak() {
        let tc = two_peak();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let u = tc.apply(0.3, &mut rng);
            assert!(u == 0.3 || u == 2.3);
        }
    }

    #[test]
    fn endpoints_examples() {
        let tc = two_peak();
        let c = ClaytonChannel::new(0.75).unwrap();
        assert_eq!(tc.endpoints(&c, 1.0), (0.0, 3.0));
        let w = UniformWindowChannel::new(0.1).unwrap();
        let (a, b) = tc.endpoints(&w, 0.5);
        assert!((a - 0.4).abs() < 1e-15 && (b - 2.6).abs() < 1e-15);
    }

    #[test]
    fn induced_density_outside_support_is_zero() {
        let tc = two_peak();
        let c = ClaytonChannel::new(0.75).unwrap();
        let x = 0.5;
        let (a, b) = tc.endpoints(&c, x);
        assert_eq!(tc.induced_density(&c, a - 1e-9, x), 0.0);
        assert_eq!(tc.induced_density(&c, b + 1e-9, x), 0.0);
        // upper end is the last peak's copy of W(1|x)
        let expect = 0.5 * 0.25 * x.powf(-0.75);
        assert!((tc.induced_density(&c, b, x) - expect).abs() < 1e-12);
    }

    #[test]
    fn midsum_inverse_examples() {
        let tc = two_peak();
        let c = ClaytonChannel::new(0.75).unwrap();
        let (a, b) = tc.endpoints(&c, 0.5);
        assert!((tc.midsum_inverse(&c, a + b).x - 0.5).abs() < 1e-9);
        let r = tc.midsum_inverse(&c, 3.0);
        assert_eq!(r.x, 1.0);
        assert!(r.in_range);
        let out = tc.midsum_inverse(&c, 2.9);
        assert!(!out.in_range);
        assert_eq!(out.x, 1.0);
        let out = tc.midsum_inverse(&c, 4.2);
        assert!(!out.in_range);
        assert_eq!(out.x, 0.0);
    }

    #[test]
    fn bisection_path_matches_closed_form() {
        // forwards everything except the closed-form inverse, forcing bisection
        #[derive(Debug)]
        struct NoClosedForm(ClaytonChannel);
        impl ObservationChannel for NoClosedForm {
            fn support(&self, x: f64) -> (f64, f64) {
                self.0.support(x)
            }
            fn density(&self, y: f64, x: f64) -> f64 {
                self.0.density(y, x)
            }
            fn cdf(&self, y: f64, x: f64) -> f64 {
                self.0.cdf(y, x)
            }
            fn quantile(&self, v: f64, x: f64) -> f64 {
                self.0.quantile(v, x)
            }
            fn output_range(&self) -> (f64, f64) {
                self.0.output_range()
            }
            fn describe(&self) -> String {
                "no-closed-form".into()
            }
        }
        let c = ClaytonChannel::new(0.75).unwrap();
        let slow = NoClosedForm(c);
        let tc = two_peak();
        for m in [3.01, 3.3, 3.7, 3.99] {
            let fast = tc.midsum_inverse(&c, m).x;
            let bis = tc.midsum_inverse(&slow, m).x;
            assert!((fast - bis).abs() < 1e-12, "{m}: {fast} vs {bis}");
        }
    }

    #[test]
    fn clayton_certificate() {
        let tc = two_peak();
        let c = ClaytonChannel::new(0.75).unwrap();
        let cert = check_property_one(&tc, &c, &CertificationGrid::default()).unwrap();
        assert!(cert.lipschitz_k > 0.0);
        assert!(cert.endpoint_floor_delta > 0.0);
        assert!(cert.endpoint_width_epsilon > 0.0);
        assert!(cert.overlapping_x.is_empty());
    }

    #[test]
    fn window_certificate_has_analytic_slope() {
        let tc = two_peak();
        let w = UniformWindowChannel::new(0.1).unwrap();
        let cert = check_property_one(&tc, &w, &CertificationGrid::default()).unwrap();
        assert!((cert.lipschitz_observed - 0.5).abs() < 1e-9);
        assert!((cert.lipschitz_k - 0.55).abs() < 1e-9);
        assert!((cert.endpoint_floor_delta - 2.5).abs() < 1e-12);
        assert!((cert.endpoint_width_epsilon - 0.05 * 2.2).abs() < 1e-12);
    }

    #[test]
    fn triangular_endpoints_vanish() {
        let tc = two_peak();
        let t = TriangularWindowChannel::new(0.1).unwrap();
        let report = check_property_one(&tc, &t, &CertificationGrid::default()).unwrap_err();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::VanishingEndpoint { .. })));
    }

    #[test]
    fn constant_sum_is_not_invertible() {
        let tc = two_peak();
        let report = check_property_one(&tc, &UninformativeChannel, &CertificationGrid::default())
            .unwrap_err();
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, Violation::NonMonotoneSum { .. })));
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn narrow_support_near_zero_breaks_the_floor() {
        // for small x the Clayton support is narrower than the ε-band
        let tc = two_peak();
        let c = ClaytonChannel::new(0.75).unwrap();
        let grid = CertificationGrid {
            x_min: 0.005,
            ..CertificationGrid::default()
        };
        let report = check_property_one(&tc, &c, &grid).unwrap_err();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NonPositiveFloor { .. })));
    }

    #[test]
    fn overlap_is_reported_not_rejected() {
        let tc = KPeakTestChannel::new(vec![0.0, 0.05], vec![0.5, 0.5]).unwrap();
        let w = UniformWindowChannel::new(0.1).unwrap();
        let cert = check_property_one(&tc, &w, &CertificationGrid::default()).unwrap();
        assert_eq!(
            cert.overlapping_x.len(),
            CertificationGrid::default().x_points
        );
    }

    #[test]
    fn bad_grid_is_reported() {
        let tc = two_peak();
        let c = ClaytonChannel::new(0.75).unwrap();
        let grid = CertificationGrid {
            x_min: 0.0,
            ..CertificationGrid::default()
        };
        assert!(check_property_one(&tc, &c, &grid).is_err());
    }
}
