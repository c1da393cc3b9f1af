//! Chernoff information, binary-test error probabilities, quantized
//! conditional mutual information and the mediant inequality.
//!
//! All logarithms are natural; information is in nats and `0·log 0 = 0`.

use std::collections::BTreeMap;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{ChannelAt, Law, ObservationChannel};
use crate::error::{CeoError, Result};
use crate::minimize::golden_section;
use crate::quad::{integrate_left_singular, SINGULAR_SPLIT};
use crate::sources::SourceModel;
use crate::test_channel::TestChannel;

/// Argument tolerance of the golden-section search over `s`.
pub const S_TOLERANCE: f64 = 1e-6;

/// Relative disagreement between the `h` and `h/2` estimates of `g` above
/// which the estimate is flagged as not converged.
pub const G_CONVERGENCE_TOL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Chernoff {
    /// `−min_s log ∫ f₀^s f₁^{1−s}`; `+∞` for disjoint supports.
    pub information: f64,
    pub s_opt: f64,
}

fn overlap<A: Law + ?Sized, B: Law + ?Sized>(d0: &A, d1: &B) -> Option<(f64, f64)> {
    let (lo0, hi0) = d0.support();
    let (lo1, hi1) = d1.support();
    let (lo, hi) = (lo0.max(lo1), hi0.min(hi1));
    (hi > lo).then_some((lo, hi))
}

/// `∫ f₀^s f₁^{1−s}` over the intersection of the supports.
pub fn bhattacharyya_family<A: Law + ?Sized, B: Law + ?Sized>(d0: &A, d1: &B, s: f64) -> f64 {
    let Some((lo, hi)) = overlap(d0, d1) else {
        return 0.0;
    };
    if s <= 0.0 {
        return (d1.cdf(hi) - d1.cdf(lo)).max(0.0);
    }
    if s >= 1.0 {
        return (d0.cdf(hi) - d0.cdf(lo)).max(0.0);
    }
    let integrand = |t: f64| {
        let (f0, f1) = (d0.pdf_from(lo, t), d1.pdf_from(lo, t));
        if f0 <= 0.0 || f1 <= 0.0 {
            0.0
        } else {
            (s * f0.ln() + (1.0 - s) * f1.ln()).exp()
        }
    };
    integrate_left_singular(integrand, hi - lo, SINGULAR_SPLIT)
}

/// Chernoff information between two laws, minimizing over `s ∈ [0, 1]`.
pub fn chernoff_between<A: Law + ?Sized, B: Law + ?Sized>(d0: &A, d1: &B) -> Chernoff {
    if overlap(d0, d1).is_none() {
        return Chernoff {
            information: f64::INFINITY,
            s_opt: 0.5,
        };
    }
    let m = golden_section(
        |s| bhattacharyya_family(d0, d1, s).max(f64::MIN_POSITIVE).ln(),
        0.0,
        1.0,
        S_TOLERANCE,
    );
    Chernoff {
        information: (-m.value).max(0.0),
        s_opt: m.arg,
    }
}

/// `C(θ, θ+Δ)` between `W(·|θ)` and `W(·|θ+Δ)`; exactly zero at `Δ = 0`.
pub fn chernoff_info(channel: &dyn ObservationChannel, theta: f64, delta: f64) -> Result<Chernoff> {
    let d0 = ChannelAt::new(channel, theta)?;
    let d1 = ChannelAt::new(channel, theta + delta)?;
    if delta == 0.0 {
        return Ok(Chernoff {
            information: 0.0,
            s_opt: 0.5,
        });
    }
    Ok(chernoff_between(&d0, &d1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GEstimate {
    /// Richardson combination `2·g(h/2) − g(h)`, floored at zero.
    pub value: f64,
    pub coarse: f64,
    pub fine: f64,
    /// Minimizing `s` at the finer step.
    pub s_opt: f64,
    pub converged: bool,
}

/// Forward-difference estimate of `g(θ) = ∂C(θ, θ+Δ)/∂Δ` at `Δ = 0`.
pub fn chernoff_derivative_g(
    channel: &dyn ObservationChannel,
    theta: f64,
    step: f64,
) -> Result<GEstimate> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(CeoError::param(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    if !(theta > 0.0 && theta + step <= 1.0) {
        return Err(CeoError::param(format!(
            "need 0 < θ and θ + step ≤ 1, got θ={theta}, step={step}"
        )));
    }
    let coarse_c = chernoff_info(channel, theta, step)?;
    let fine_c = chernoff_info(channel, theta, 0.5 * step)?;
    let coarse = coarse_c.information / step;
    let fine = fine_c.information / (0.5 * step);
    if !(coarse.is_finite() && fine.is_finite()) {
        return Ok(GEstimate {
            value: f64::INFINITY,
            coarse,
            fine,
            s_opt: fine_c.s_opt,
            converged: false,
        });
    }
    let scale = coarse.abs().max(fine.abs());
    let converged = scale == 0.0 || (coarse - fine).abs() <= G_CONVERGENCE_TOL * scale;
    Ok(GEstimate {
        value: (2.0 * fine - coarse).max(0.0),
        coarse,
        fine,
        s_opt: fine_c.s_opt,
        converged,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChernoffProfile {
    pub theta_grid: Vec<f64>,
    pub g_values: Vec<f64>,
    pub delta_step: f64,
    pub s_optima: Vec<f64>,
    pub converged: Vec<bool>,
}

impl ChernoffProfile {
    /// `g` on the midpoint grid `θ_i = (i + 1/2)/n`, computed in parallel.
    pub fn compute(channel: &dyn ObservationChannel, points: usize, step: f64) -> Result<Self> {
        if points == 0 {
            return Err(CeoError::param("theta grid needs at least one point"));
        }
        let theta_grid: Vec<f64> = (0..points)
            .map(|i| (i as f64 + 0.5) / points as f64)
            .collect();
        let estimates: Vec<GEstimate> = theta_grid
            .par_iter()
            .map(|&t| chernoff_derivative_g(channel, t, step))
            .collect::<Result<_>>()?;
        Ok(ChernoffProfile {
            g_values: estimates.iter().map(|e| e.value).collect(),
            s_optima: estimates.iter().map(|e| e.s_opt).collect(),
            converged: estimates.iter().map(|e| e.converged).collect(),
            theta_grid,
            delta_step: step,
        })
    }

    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }

    /// Midpoint-rule weight of each grid point.
    pub fn weight(&self) -> f64 {
        1.0 / self.theta_grid.len() as f64
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,g,s_opt\n");
        for ((t, g), s) in self
            .theta_grid
            .iter()
            .zip(&self.g_values)
            .zip(&self.s_optima)
        {
            out.push_str(&format!("{t:.11e},{g:.11e},{s:.11e}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PminMethod {
    /// `∫ min(π₀f₀, π₁f₁)`; single observation only.
    ExactQuadrature,
    MonteCarlo {
        trials: usize,
        seed: u64,
    },
    /// `exp(−L·C)`.
    ChernoffAsymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinErrorProb {
    pub value: f64,
    pub stderr: Option<f64>,
}

/// Minimum error probability of the Bayes test between `f₀` and `f₁` from
/// `agents` i.i.d. observations.
pub fn min_error_prob<A: Law + ?Sized, B: Law + ?Sized>(
    d0: &A,
    d1: &B,
    prior0: f64,
    agents: usize,
    method: PminMethod,
) -> Result<MinErrorProb> {
    if !(prior0 > 0.0 && prior0 < 1.0) {
        return Err(CeoError::param(format!(
            "prior must lie in (0, 1), got {prior0}"
        )));
    }
    if agents == 0 {
        return Err(CeoError::param("need at least one observation"));
    }
    let prior1 = 1.0 - prior0;
    match method {
        PminMethod::ExactQuadrature => {
            if agents != 1 {
                return Err(CeoError::MethodMismatch {
                    method: "exact quadrature",
                    agents,
                });
            }
            let Some((lo, hi)) = overlap(d0, d1) else {
                return Ok(MinErrorProb {
                    value: 0.0,
                    stderr: None,
                });
            };
            let integrand = |t: f64| (prior0 * d0.pdf_from(lo, t)).min(prior1 * d1.pdf_from(lo, t));
            let value = integrate_left_singular(integrand, hi - lo, SINGULAR_SPLIT);
            Ok(MinErrorProb {
                value: value.clamp(0.0, prior0.min(prior1)),
                stderr: None,
            })
        }
        PminMethod::MonteCarlo { trials, seed } => {
            if trials < 2 {
                return Err(CeoError::param("Monte Carlo needs at least two trials"));
            }
            let (lp0, lp1) = (prior0.ln(), prior1.ln());
            let decide_one = |ll0: f64, ll1: f64| {
                let (a, b) = (lp0 + ll0, lp1 + ll1);
                b > a || (b == a && prior1 > prior0)
            };
            let errors: Vec<f64> = (0..trials)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i as u64);
                    // (a0, a1): log-likelihoods of a sample drawn under H0; (b0, b1) under H1
                    let (mut a0, mut a1, mut b0, mut b1) = (0.0, 0.0, 0.0, 0.0);
                    for _ in 0..agents {
                        let v: f64 = rng.sample(Open01);
                        let y0 = d0.quantile(v);
                        let y1 = d1.quantile(v);
                        a0 += d0.pdf(y0).ln();
                        a1 += d1.pdf(y0).ln();
                        b0 += d0.pdf(y1).ln();
                        b1 += d1.pdf(y1).ln();
                    }
                    let mut e = 0.0;
                    if decide_one(a0, a1) {
                        e += prior0;
                    }
                    if !decide_one(b0, b1) {
                        e += prior1;
                    }
                    e
                })
                .collect();
            let (mean, stderr) = crate::stats::mean_stderr(&errors);
            Ok(MinErrorProb {
                value: mean,
                stderr: Some(stderr),
            })
        }
        PminMethod::ChernoffAsymptotic => {
            let c = chernoff_between(d0, d1).information;
            Ok(MinErrorProb {
                value: (-(agents as f64) * c).exp(),
                stderr: None,
            })
        }
    }
}

/// Bin counts for the quantized `(X̃, Ỹ, Ũ)` alphabets. Edges are uniform
/// over `[0, 1]`, the channel output range and the test-channel output range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct QuantGrid {
    pub x_bins: usize,
    pub y_bins: usize,
    pub u_bins: usize,
    /// Midpoint-rule nodes per x bin.
    pub x_subnodes: usize,
}

impl QuantGrid {
    pub fn new(x_bins: usize, y_bins: usize, u_bins: usize) -> Result<Self> {
        let grid = QuantGrid {
            x_bins,
            y_bins,
            u_bins,
            x_subnodes: 16,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.x_bins < 2 || self.y_bins < 2 || self.u_bins < 2 || self.x_subnodes == 0 {
            return Err(CeoError::param(format!(
                "grid needs ≥ 2 bins per variable and ≥ 1 subnode, got {}x{}x{} / {}",
                self.x_bins, self.y_bins, self.u_bins, self.x_subnodes
            )));
        }
        Ok(())
    }

    /// Both y and u bin counts doubled, so the new edges nest the old ones.
    pub fn refined(&self) -> Self {
        QuantGrid {
            y_bins: 2 * self.y_bins,
            u_bins: 2 * self.u_bins,
            ..*self
        }
    }
}

impl std::fmt::Display for QuantGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}x{}x{} ({} x subnodes)",
            self.x_bins, self.y_bins, self.u_bins, self.x_subnodes
        )
    }
}

impl std::str::FromStr for QuantGrid {
    type Err = CeoError;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| CeoError::Config(format!("bad grid '{s}', expected GX,GY,GU")))
            })
            .collect::<Result<_>>()?;
        match parts.as_slice() {
            [gx, gy, gu] => {
                QuantGrid::new(*gx, *gy, *gu).map_err(|e| CeoError::Config(e.to_string()))
            }
            _ => Err(CeoError::Config(format!(
                "bad grid '{s}', expected GX,GY,GU"
            ))),
        }
    }
}

fn uniform_edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    (0..=bins)
        .map(|i| {
            if i == bins {
                hi
            } else {
                lo + (hi - lo) * i as f64 / bins as f64
            }
        })
        .collect()
}

/// Joint probability mass of `(X̃, Ỹ, Ũ)`, stored per x bin as a sparse map
/// from `(y bin, u bin)` to mass.
#[derive(Debug, Clone)]
pub struct JointMass {
    pub x_edges: Vec<f64>,
    pub y_edges: Vec<f64>,
    pub u_edges: Vec<f64>,
    pub cells: Vec<BTreeMap<(u32, u32), f64>>,
    /// Set when u bins are too wide to tell adjacent peaks apart.
    pub coarse_warning: bool,
}

impl JointMass {
    /// Exact in `y` and `u` through CDF differences at every bin boundary
    /// (per peak for the k-peak kernel), midpoint rule in `x`.
    pub fn build(
        source: &SourceModel,
        channel: &dyn ObservationChannel,
        tc: &TestChannel,
        grid: &QuantGrid,
    ) -> Result<Self> {
        grid.validate()?;
        let (ylo, yhi) = channel.output_range();
        let (ulo, uhi) = tc.output_range(channel);
        let x_edges = uniform_edges(0.0, 1.0, grid.x_bins);
        let y_edges = uniform_edges(ylo, yhi, grid.y_bins);
        let u_edges = uniform_edges(ulo, uhi, grid.u_bins);
        let du = (uhi - ulo) / grid.u_bins as f64;
        let coarse_warning = match tc {
            TestChannel::KPeak(k) => k.offsets().windows(2).any(|w| 2.0 * du > w[1] - w[0]),
            TestChannel::PureNoise(_) => false,
        };

        let cells: Vec<BTreeMap<(u32, u32), f64>> = (0..grid.x_bins)
            .into_par_iter()
            .map(|i| {
                let (xa, xb) = (x_edges[i], x_edges[i + 1]);
                let h = (xb - xa) / grid.x_subnodes as f64;
                let mut map = BTreeMap::new();
                for s in 0..grid.x_subnodes {
                    let x = xa + h * (s as f64 + 0.5);
                    let wx = source.pdf(x) * h;
                    if wx <= 0.0 {
                        continue;
                    }
                    let ycdf: Vec<f64> = y_edges.iter().map(|&y| channel.cdf(y, x)).collect();
                    match tc {
                        TestChannel::KPeak(k) => {
                            for (&n, &p) in k.offsets().iter().zip(k.probs()) {
                                add_shifted(
                                    &mut map,
                                    channel,
                                    x,
                                    wx * p,
                                    &y_edges,
                                    &ycdf,
                                    &u_edges,
                                    n,
                                );
                            }
                        }
                        TestChannel::PureNoise(noise) => {
                            let width = noise.hi - noise.lo;
                            for j in 0..grid.y_bins {
                                let py = ycdf[j + 1] - ycdf[j];
                                if py <= 0.0 {
                                    continue;
                                }
                                for k in 0..grid.u_bins {
                                    let (a, b) =
                                        (u_edges[k].max(noise.lo), u_edges[k + 1].min(noise.hi));
                                    if b > a {
                                        *map.entry((j as u32, k as u32)).or_insert(0.0) +=
                                            wx * py * (b - a) / width;
                                    }
                                }
                            }
                        }
                    }
                }
                map
            })
            .collect();

        let total: f64 = cells.iter().flat_map(|m| m.values()).sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(CeoError::param("joint mass is empty on this grid"));
        }
        let cells = cells
            .into_iter()
            .map(|m| m.into_iter().map(|(key, v)| (key, v / total)).collect())
            .collect();
        Ok(JointMass {
            x_edges,
            y_edges,
            u_edges,
            cells,
            coarse_warning,
        })
    }

    pub fn total(&self) -> f64 {
        self.cells.iter().flat_map(|m| m.values()).sum()
    }

    fn marginals(&self) -> Marginals {
        let mut m = Marginals::default();
        for (i, cell) in self.cells.iter().enumerate() {
            for (&(j, k), &p) in cell {
                *m.x.entry(i as u32).or_insert(0.0) += p;
                *m.y.entry(j).or_insert(0.0) += p;
                *m.u.entry(k).or_insert(0.0) += p;
                *m.xy.entry((i as u32, j)).or_insert(0.0) += p;
                *m.xu.entry((i as u32, k)).or_insert(0.0) += p;
            }
        }
        m
    }

    /// `I(Ỹ; Ũ | X̃)` from the log-ratio sum.
    pub fn conditional_mi(&self) -> f64 {
        let m = self.marginals();
        let mut acc = 0.0;
        for (i, cell) in self.cells.iter().enumerate() {
            let i = i as u32;
            let px = m.x[&i];
            for (&(j, k), &p) in cell {
                if p > 0.0 {
                    acc += p * (p * px / (m.xy[&(i, j)] * m.xu[&(i, k)])).ln();
                }
            }
        }
        acc.max(0.0)
    }

    /// `H(Ũ|X̃) − H(Ũ|X̃,Ỹ)`, an independent route to the same quantity.
    pub fn conditional_mi_by_entropies(&self) -> f64 {
        let m = self.marginals();
        let h_x = entropy(m.x.values());
        let h_xy = entropy(m.xy.values());
        let h_xu = entropy(m.xu.values());
        let h_xyu = entropy(self.cells.iter().flat_map(|c| c.values()));
        (h_xu - h_x) - (h_xyu - h_xy)
    }

    /// `I(X̃; Ỹ)`.
    pub fn mi_xy(&self) -> f64 {
        let m = self.marginals();
        mutual_information(&m.xy, &m.x, &m.y)
    }

    /// `I(X̃; Ũ)`.
    pub fn mi_xu(&self) -> f64 {
        let m = self.marginals();
        mutual_information(&m.xu, &m.x, &m.u)
    }
}

#[derive(Default)]
struct Marginals {
    x: BTreeMap<u32, f64>,
    y: BTreeMap<u32, f64>,
    u: BTreeMap<u32, f64>,
    xy: BTreeMap<(u32, u32), f64>,
    xu: BTreeMap<(u32, u32), f64>,
}

#[allow(clippy::too_many_arguments)]
fn add_shifted(
    map: &mut BTreeMap<(u32, u32), f64>,
    channel: &dyn ObservationChannel,
    x: f64,
    weight: f64,
    y_edges: &[f64],
    ycdf: &[f64],
    u_edges: &[f64],
    shift: f64,
) {
    // breakpoints of the partition {y bins} ∧ {u bins − shift}
    let (ny, nu) = (y_edges.len() - 1, u_edges.len() - 1);
    let (mut j, mut k) = (0usize, 0usize);
    let ub = |k: usize| u_edges[k] - shift;
    while k < nu && ub(k + 1) <= y_edges[0] {
        k += 1;
    }
    let mut left = y_edges[0].max(ub(k.min(nu - 1)));
    let mut f_left = channel.cdf(left, x);
    while j < ny && k < nu {
        let right_y = y_edges[j + 1];
        let right_u = ub(k + 1);
        let right = right_y.min(right_u);
        let f_right = if right == right_y {
            ycdf[j + 1]
        } else {
            channel.cdf(right, x)
        };
        let mass = f_right - f_left;
        if mass > 0.0 && right > left {
            *map.entry((j as u32, k as u32)).or_insert(0.0) += weight * mass;
        }
        if right_y <= right_u {
            j += 1;
        }
        if right_u <= right_y {
            k += 1;
        }
        left = right;
        f_left = f_right;
    }
}

fn entropy<'a>(masses: impl Iterator<Item = &'a f64>) -> f64 {
    masses.filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum()
}

fn mutual_information(
    joint: &BTreeMap<(u32, u32), f64>,
    a: &BTreeMap<u32, f64>,
    b: &BTreeMap<u32, f64>,
) -> f64 {
    joint
        .iter()
        .filter(|(_, &p)| p > 0.0)
        .map(|(&(i, j), &p)| p * (p / (a[&i] * b[&j])).ln())
        .sum::<f64>()
        .max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CmiResult {
    pub nats: f64,
    pub coarse_warning: bool,
}

impl CmiResult {
    pub fn bits(&self) -> f64 {
        self.nats / std::f64::consts::LN_2
    }
}

/// `I(Ỹ; Ũ | X̃)` on the quantized alphabets of `grid`.
pub fn quantized_cmi(
    source: &SourceModel,
    channel: &dyn ObservationChannel,
    tc: &TestChannel,
    grid: &QuantGrid,
) -> Result<CmiResult> {
    let mass = JointMass::build(source, channel, tc, grid)?;
    Ok(CmiResult {
        nats: mass.conditional_mi(),
        coarse_warning: mass.coarse_warning,
    })
}

/// Smallest quantized CMI over an explicit family of test channels, with the
/// index of the minimizer.
pub fn cmi_min(
    source: &SourceModel,
    channel: &dyn ObservationChannel,
    family: &[TestChannel],
    grid: &QuantGrid,
) -> Result<(CmiResult, usize)> {
    let mut best: Option<(CmiResult, usize)> = None;
    for (idx, tc) in family.iter().enumerate() {
        let r = quantized_cmi(source, channel, tc, grid)?;
        if best.is_none_or(|(b, _)| r.nats < b.nats) {
            best = Some((r, idx));
        }
    }
    best.ok_or_else(|| CeoError::param("test-channel family is empty"))
}

/// `Σ pᵢAᵢ / Σ pᵢBᵢ`, which is never below `min Aᵢ/Bᵢ` over `Bᵢ > 0`.
pub fn mediant_min(p: &[f64], a: &[f64], b: &[f64]) -> Result<f64> {
    if p.len() != a.len() || p.len() != b.len() || p.is_empty() {
        return Err(CeoError::param(
            "mediant needs three nonempty sequences of equal length",
        ));
    }
    if p.iter()
        .chain(a)
        .chain(b)
        .any(|&v| !(v >= 0.0 && v.is_finite()))
    {
        return Err(CeoError::param(
            "mediant terms must be finite and nonnegative",
        ));
    }
    if p.len() == 1 && p[0] > 0.0 && b[0] > 0.0 {
        return Ok(a[0] / b[0]);
    }
    let num: f64 = p.iter().zip(a).map(|(p, a)| p * a).sum();
    let den: f64 = p.iter().zip(b).map(|(p, b)| p * b).sum();
    if den <= 0.0 {
        return Err(CeoError::param("mediant denominator Σ pᵢBᵢ is zero"));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{ClaytonChannel, UniformLaw, UniformWindowChannel};
    use crate::test_channel::{KPeakTestChannel, PureNoiseChannel};

    fn clayton_tc() -> TestChannel {
        TestChannel::KPeak(KPeakTestChannel::new(vec![0.0, 2.0], vec![0.5, 0.5]).unwrap())
    }

    #[test]
    fn zero_shift_is_exactly_zero() {
        let c = ClaytonChannel::new(0.75).unwrap();
        assert_eq!(chernoff_info(&c, 0.4, 0.0).unwrap().information, 0.0);
    }

    #[test]
    fn window_chernoff_closed_form() {
        let w = UniformWindowChannel::new(0.1).unwrap();
        for d in [0.01, 0.05, 0.1, 0.15, 0.19] {
            let c = chernoff_info(&w, 0.4, d).unwrap().information;
            let expect = -(1.0 - d / 0.2_f64).ln();
            assert!(
                (c - expect).abs() < 1e-9 * expect.max(1.0),
                "{d}: {c} vs {expect}"
            );
        }
        assert!(chernoff_info(&w, 0.3, 0.25)
            .unwrap()
            .information
            .is_infinite());
    }

    #[test]
    fn golden_section_matches_scan() {
        let c = ClaytonChannel::new(0.75).unwrap();
        let (d0, d1) = (
            ChannelAt::new(&c, 0.3).unwrap(),
            ChannelAt::new(&c, 0.45).unwrap(),
        );
        let got = chernoff_between(&d0, &d1);
        let scan = (0..=1000)
            .map(|i| -bhattacharyya_family(&d0, &d1, i as f64 / 1000.0).ln())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((got.information - scan).abs() < 1e-3);
        assert!(got.information >= scan - 1e-9);
        assert!((0.0..=1.0).contains(&got.s_opt));
    }

    #[test]
    fn window_g_is_inverse_width() {
        let w = UniformWindowChannel::new(0.1).unwrap();
        let g = chernoff_derivative_g(&w, 0.5, 1e-3).unwrap();
        assert!(g.converged);
        assert!((g.value - 5.0).abs() < 0.01 * 5.0);
    }

    #[test]
    fn clayton_g_does_not_settle() {
        // C(θ, θ+Δ) grows like Δ^{1/3} here, so C/Δ has no finite limit
        let c = ClaytonChannel::new(0.75).unwrap();
        let g = chernoff_derivative_g(&c, 0.5, 1e-3).unwrap();
        assert!(!g.converged);
        assert!(g.fine > g.coarse && g.coarse > 0.0);
    }

    #[test]
    fn profile_shape() {
        let w = UniformWindowChannel::new(0.1).unwrap();
        let p = ChernoffProfile::compute(&w, 8, 1e-3).unwrap();
        assert_eq!(p.theta_grid.len(), 8);
        assert!(p.g_values.iter().all(|g| g.is_finite() && *g >= 0.0));
        assert!(p.s_optima.iter().all(|s| (0.0..=1.0).contains(s)));
        assert!(p.to_csv().starts_with("theta,g,s_opt\n"));
    }

    #[test]
    fn shifted_uniform_exact_pmin() {
        let f0 = UniformLaw::new(0.0, 1.0).unwrap();
        for h in [0.0, 0.1, 0.5, 0.9, 1.0] {
            let f1 = UniformLaw::new(h, 1.0 + h).unwrap();
            let p = min_error_prob(&f0, &f1, 0.5, 1, PminMethod::ExactQuadrature)
                .unwrap()
                .value;
            assert!((p - (1.0 - h) / 2.0).abs() < 1e-10, "{h}: {p}");
        }
    }

    #[test]
    fn identical_laws_give_smaller_prior() {
        let f = UniformLaw::new(0.0, 1.0).unwrap();
        let p = min_error_prob(&f, &f, 0.3, 1, PminMethod::ExactQuadrature)
            .unwrap()
            .value;
        assert!((p - 0.3).abs() < 1e-12);
        let mc = min_error_prob(
            &f,
            &f,
            0.3,
            4,
            PminMethod::MonteCarlo {
                trials: 100,
                seed: 1,
            },
        )
        .unwrap()
        .value;
        assert!((mc - 0.3).abs() < 1e-12);
    }

    #[test]
    fn exact_method_rejects_many_observations() {
        let f = UniformLaw::new(0.0, 1.0).unwrap();
        assert!(matches!(
            min_error_prob(&f, &f, 0.5, 3, PminMethod::ExactQuadrature),
            Err(CeoError::MethodMismatch { agents: 3, .. })
        ));
    }

    #[test]
    fn pure_noise_cmi_vanishes() {
        let c = ClaytonChannel::new(0.75).unwrap();
        let tc = TestChannel::PureNoise(PureNoiseChannel::new(0.0, 3.0).unwrap());
        let r = quantized_cmi(
            &SourceModel::uniform(),
            &c,
            &tc,
            &QuantGrid::new(8, 32, 64).unwrap(),
        )
        .unwrap();
        assert!(r.nats.abs() < 1e-9);
    }

    #[test]
    fn two_routes_agree() {
        let c = ClaytonChannel::new(0.75).unwrap();
        let mass = JointMass::build(
            &SourceModel::uniform(),
            &c,
            &clayton_tc(),
            &QuantGrid::new(8, 32, 96).unwrap(),
        )
        .unwrap();
        assert!((mass.total() - 1.0).abs() < 1e-12);
        let a = mass.conditional_mi();
        let b = mass.conditional_mi_by_entropies();
        assert!(a > 0.0);
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn coarse_grid_is_flagged() {
        let c = ClaytonChannel::new(0.75).unwrap();
        let tc = TestChannel::KPeak(KPeakTestChannel::new(vec![0.0, 0.1], vec![0.5, 0.5]).unwrap());
        let r = quantized_cmi(
            &SourceModel::uniform(),
            &c,
            &tc,
            &QuantGrid::new(4, 8, 4).unwrap(),
        )
        .unwrap();
        assert!(r.coarse_warning);
        assert!(r.nats >= 0.0);
    }

    #[test]
    fn grid_parse() {
        let g: QuantGrid = "64,256,512".parse().unwrap();
        assert_eq!((g.x_bins, g.y_bins, g.u_bins), (64, 256, 512));
        assert!("64,256".parse::<QuantGrid>().is_err());
        assert!("1,2,2".parse::<QuantGrid>().is_err());
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(
            mediant_min(&[1.0, 1.0], &[1.0, 2.0], &[1.0, 1.0]).unwrap(),
            1.5
        );
        assert_eq!(mediant_min(&[0.7], &[3.0], &[4.0]).unwrap(), 0.75);
        assert!(mediant_min(&[1.0], &[1.0], &[0.0]).is_err());
        assert!(mediant_min(&[1.0, 2.0], &[1.0], &[1.0]).is_err());
    }
}
