//! Monte Carlo of the achievability pipeline: draw `X`, observe through the
//! channel, pass each observation through the test channel and decode with
//! the midrange inverse `x̂ = l(U_(1) + U_(L))`.
//!
//! Every trial owns a ChaCha stream keyed by `(seed, L, trial)`, so results
//! do not depend on how rayon schedules the work.

use std::io::Write;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{theorem_one_report, BoundsConfig, TheoremOneReport};
use crate::channels::{Channel, ObservationChannel};
use crate::error::{CeoError, Result};
use crate::info::{quantized_cmi, QuantGrid};
use crate::sources::SourceModel;
use crate::stats::{mean_stderr, ols_slope};
use crate::test_channel::{KPeakTestChannel, TestChannel};

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub source: SourceModel,
    pub channel: Channel,
    pub test_channel: TestChannel,
    pub grid: QuantGrid,
    pub l_list: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub bounds: BoundsConfig,
    pub out: Option<PathBuf>,
}

impl SimConfig {
    /// The default Clayton setup: `α = 0.75`, peaks `(0, 2)` with equal
    /// weights, uniform source.
    pub fn clayton_default() -> Self {
        SimConfig {
            source: SourceModel::uniform(),
            channel: Channel::parse("clayton", 0.75).expect("0.75 is a valid alpha"),
            test_channel: TestChannel::KPeak(
                KPeakTestChannel::new(vec![0.0, 2.0], vec![0.5, 0.5]).expect("valid peaks"),
            ),
            grid: QuantGrid::new(64, 256, 512).expect("valid grid"),
            l_list: vec![10, 30, 100, 300, 1000],
            trials: 10_000,
            seed: 1,
            bounds: BoundsConfig::default(),
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(CeoError::Config("trials must be at least 1".into()));
        }
        if self.l_list.is_empty() {
            return Err(CeoError::Config("agent list is empty".into()));
        }
        if let Some(l) = self.l_list.iter().find(|&&l| l < 2) {
            return Err(CeoError::Config(format!(
                "every L must be at least 2 for the midrange, got {l}"
            )));
        }
        self.grid
            .validate()
            .map_err(|e| CeoError::Config(e.to_string()))
    }
}

/// `l(min u + max u)`, clamped to `[0, 1]`.
pub fn midrange_estimate<C: ObservationChannel + ?Sized>(
    u_values: &[f64],
    tc: &KPeakTestChannel,
    channel: &C,
) -> Result<f64> {
    if u_values.len() < 2 {
        return Err(CeoError::param(format!(
            "midrange needs at least two values, got {}",
            u_values.len()
        )));
    }
    let (lo, hi) = u_values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &u| {
            (lo.min(u), hi.max(u))
        });
    Ok(tc.midsum_inverse(channel, lo + hi).x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Trial {
    pub x: f64,
    pub x_hat: f64,
    pub sq_err: f64,
}

fn trial_rng(seed: u64, agents: usize, index: usize) -> ChaCha8Rng {
    let key = seed ^ (agents as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(index as u64);
    rng
}

/// One draw of `(x, x̂, (x − x̂)²)` with `agents` observations.
pub fn run_trial(config: &SimConfig, agents: usize, index: usize) -> Trial {
    let mut rng = trial_rng(config.seed, agents, index);
    let x = config.source.sample_one(&mut rng);
    let x_hat = match &config.test_channel {
        TestChannel::KPeak(tc) => {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for _ in 0..agents {
                let u = tc.sample_output(&config.channel, x, &mut rng);
                lo = lo.min(u);
                hi = hi.max(u);
            }
            tc.midsum_inverse(&config.channel, lo + hi).x
        }
        TestChannel::PureNoise(_) => config.source.mean(),
    };
    Trial {
        x,
        x_hat,
        sq_err: (x - x_hat) * (x - x_hat),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistortionEstimate {
    pub mean: f64,
    pub stderr: f64,
}

/// Mean and standard error of the squared error over `config.trials`.
pub fn estimate_distortion(config: &SimConfig, agents: usize) -> DistortionEstimate {
    let errors: Vec<f64> = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, agents, i).sq_err)
        .collect();
    let (mean, stderr) = mean_stderr(&errors);
    DistortionEstimate { mean, stderr }
}

/// `(R/L, R)` with the per-agent rate set to the quantized CMI.
pub fn rate_for(config: &SimConfig, agents: usize) -> Result<(f64, f64)> {
    let per_agent = quantized_cmi(
        &config.source,
        &config.channel,
        &config.test_channel,
        &config.grid,
    )?
    .nats;
    Ok((per_agent, agents as f64 * per_agent))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "L")]
    pub agents: usize,
    pub rate_per_agent: f64,
    pub rate_sum: f64,
    pub distortion_mean: f64,
    pub distortion_stderr: f64,
    pub r2d: f64,
    pub beta_upper: f64,
    pub beta_lower: f64,
}

impl SweepRow {
    /// Standard error of `r2d`, from that of the distortion.
    pub fn r2d_stderr(&self) -> f64 {
        self.rate_sum * self.rate_sum * self.distortion_stderr
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub rate_per_agent_bits: f64,
    pub coarse_grid_warning: bool,
    /// Absent for the pure-noise test channel, which has no certificate.
    pub bounds: Option<TheoremOneReport>,
}

/// Runs every `L` in the list and attaches both bound constants.
pub fn sweep(config: &SimConfig) -> Result<SweepReport> {
    config.validate()?;
    let cmi = quantized_cmi(
        &config.source,
        &config.channel,
        &config.test_channel,
        &config.grid,
    )?;
    let bounds = match &config.test_channel {
        TestChannel::KPeak(tc) => Some(theorem_one_report(
            &config.source,
            &config.channel,
            tc,
            &config.grid,
            &config.bounds,
        )?),
        TestChannel::PureNoise(_) => None,
    };
    let (bu, bl) = bounds
        .as_ref()
        .map_or((f64::NAN, f64::NAN), |b| (b.beta_upper, b.beta_lower));
    let rows = config
        .l_list
        .iter()
        .map(|&agents| {
            let d = estimate_distortion(config, agents);
            let rate_sum = agents as f64 * cmi.nats;
            SweepRow {
                agents,
                rate_per_agent: cmi.nats,
                rate_sum,
                distortion_mean: d.mean,
                distortion_stderr: d.stderr,
                r2d: rate_sum * rate_sum * d.mean,
                beta_upper: bu,
                beta_lower: bl,
            }
        })
        .collect();
    Ok(SweepReport {
        rows,
        rate_per_agent_bits: cmi.bits(),
        coarse_grid_warning: cmi.coarse_warning,
        bounds,
    })
}

/// Least-squares slope of `log D` against `log R`.
pub fn fit_exponent(rows: &[SweepRow]) -> Result<f64> {
    let mut ls: Vec<usize> = rows.iter().map(|r| r.agents).collect();
    ls.sort_unstable();
    ls.dedup();
    if ls.len() < 3 {
        return Err(CeoError::DegenerateFit(format!(
            "need at least 3 distinct L, got {}",
            ls.len()
        )));
    }
    let usable = rows
        .iter()
        .all(|r| r.rate_sum > 0.0 && r.distortion_mean > 0.0);
    if !usable {
        return Err(CeoError::DegenerateFit(
            "rates and distortions must be positive".into(),
        ));
    }
    let x: Vec<f64> = rows.iter().map(|r| r.rate_sum.ln()).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.distortion_mean.ln()).collect();
    ols_slope(&x, &y).ok_or_else(|| CeoError::DegenerateFit("all rates are equal".into()))
}

pub const CSV_HEADER: &str = "L,rate_per_agent_nats,rate_sum_nats,distortion_mean,distortion_stderr,r2d,beta_upper,beta_lower";

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}",
            r.agents,
            r.rate_per_agent,
            r.rate_sum,
            r.distortion_mean,
            r.distortion_stderr,
            r.r2d,
            r.beta_upper,
            r.beta_lower
        )?;
    }
    Ok(())
}

pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}

/// Normalized extremes `ξ = L(1 − F(U_(L)|x))` and `η = L·F(U_(1)|x)` over
/// independent replications; both tend to unit exponentials as `L` grows.
pub fn extreme_statistics<C: ObservationChannel + ?Sized>(
    channel: &C,
    tc: &KPeakTestChannel,
    x: f64,
    agents: usize,
    replications: usize,
    seed: u64,
) -> (Vec<f64>, Vec<f64>) {
    let pairs: Vec<(f64, f64)> = (0..replications)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, agents, i);
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for _ in 0..agents {
                let u = tc.sample_output(channel, x, &mut rng);
                lo = lo.min(u);
                hi = hi.max(u);
            }
            let l = agents as f64;
            (
                l * (1.0 - tc.induced_cdf(channel, hi, x)),
                l * tc.induced_cdf(channel, lo, x),
            )
        })
        .collect();
    pairs.into_iter().unzip()
}
