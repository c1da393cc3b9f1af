//! Upper and lower constants on `β = lim R²D`, and the Chazan–Zakai–Ziv
//! bound on the mean squared error.

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{ChannelAt, ObservationChannel};
use crate::error::{CeoError, DivergenceReport, Result};
use crate::info::{cmi_min, min_error_prob, quantized_cmi, ChernoffProfile, PminMethod, QuantGrid};
use crate::quad::gauss_legendre;
use crate::sources::SourceModel;
use crate::test_channel::{
    check_property_one, CertificationGrid, KPeakTestChannel, PropertyOneCertificate, TestChannel,
};

/// `2K²/δ² · I²`.
pub fn beta_upper(cert: &PropertyOneCertificate, cmi: f64) -> f64 {
    let k = cert.lipschitz_k;
    let d = cert.endpoint_floor_delta;
    2.0 * k * k / (d * d) * cmi * cmi
}

/// `I² · ∫ f_X(θ)/g(θ)² dθ` by the midpoint rule on the profile grid. The
/// inner `h`-integral `∫ h e^{−hg} dh = 1/g²` is done in closed form.
pub fn beta_lower(
    source: &SourceModel,
    cmi_min: f64,
    profile: &ChernoffProfile,
    g_floor: f64,
) -> Result<f64> {
    if !(cmi_min >= 0.0) {
        return Err(CeoError::param(format!(
            "cmi must be nonnegative, got {cmi_min}"
        )));
    }
    let offending: Vec<(f64, f64)> = profile
        .theta_grid
        .iter()
        .zip(&profile.g_values)
        .filter(|(_, &g)| !(g > g_floor))
        .map(|(&t, &g)| (t, g))
        .collect();
    if !offending.is_empty() {
        return Err(CeoError::Divergence(DivergenceReport {
            g_floor,
            offending,
        }));
    }
    let w = profile.weight();
    let integral: f64 = profile
        .theta_grid
        .iter()
        .zip(&profile.g_values)
        .map(|(&t, &g)| source.pdf(t) / (g * g) * w)
        .sum();
    Ok(cmi_min * cmi_min * integral)
}

/// A prior density supported on `[0, T]`.
pub trait Prior: Sync {
    fn upper(&self) -> f64;
    fn pdf(&self, x: f64) -> f64;
}

impl Prior for SourceModel {
    fn upper(&self) -> f64 {
        1.0
    }
    fn pdf(&self, x: f64) -> f64 {
        SourceModel::pdf(self, x)
    }
}

/// ```text
/// (1/2T) ∫₀^T h ∫₀^{T−h} (f(θ) + f(θ+h)) P_min(θ, θ+h) dθ dh
/// ```
///
/// with `nodes × nodes` Gauss–Legendre points. `pmin(θ₀, θ₁, π₀)` returns the
/// minimum error probability with prior `π₀ = f(θ₀)/(f(θ₀)+f(θ₁))` on `θ₀`.
pub fn czz_bound_with<P, F>(prior: &P, nodes: usize, pmin: F) -> Result<f64>
where
    P: Prior + ?Sized,
    F: Fn(f64, f64, f64) -> Result<f64> + Sync,
{
    let t = prior.upper();
    if !(t > 0.0 && t.is_finite()) || nodes == 0 {
        return Err(CeoError::param(format!(
            "need T > 0 and at least one node, got T={t}, nodes={nodes}"
        )));
    }
    let (hs, hw) = gauss_legendre(nodes, 0.0, t);
    let outer: Vec<f64> = hs
        .par_iter()
        .zip(hw.par_iter())
        .map(|(&h, &wh)| {
            let (ts, tw) = gauss_legendre(nodes, 0.0, t - h);
            let mut inner = 0.0;
            for (&th, &wt) in ts.iter().zip(&tw) {
                let (f0, f1) = (prior.pdf(th), prior.pdf(th + h));
                let mass = f0 + f1;
                if f0 <= 0.0 || f1 <= 0.0 {
                    continue;
                }
                inner += wt * mass * pmin(th, th + h, f0 / mass)?;
            }
            Ok(wh * h * inner)
        })
        .collect::<Result<_>>()?;
    Ok(outer.iter().sum::<f64>() / (2.0 * t))
}

/// [`czz_bound_with`] where each hypothesis is `L` i.i.d. draws from the
/// channel at `θ`.
pub fn czz_bound<P: Prior + ?Sized>(
    prior: &P,
    likelihood: &dyn ObservationChannel,
    agents: usize,
    method: PminMethod,
    nodes: usize,
) -> Result<f64> {
    czz_bound_with(prior, nodes, |a, b, p0| {
        let d0 = ChannelAt::new(likelihood, a)?;
        let d1 = ChannelAt::new(likelihood, b)?;
        Ok(min_error_prob(&d0, &d1, p0, agents, method)?.value)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsConfig {
    pub theta_points: usize,
    pub g_step: f64,
    pub g_floor: f64,
    /// Test channels searched for the smallest CMI in the lower bound; empty
    /// means the configured channel alone.
    pub family: Vec<TestChannel>,
    pub certification: CertificationGrid,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            theta_points: 16,
            g_step: 1e-3,
            g_floor: 1e-6,
            family: Vec::new(),
            certification: CertificationGrid::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremOneReport {
    pub beta_upper: f64,
    pub beta_lower: f64,
    pub cmi_used: f64,
    pub cmi_used_bits: f64,
    pub cmi_min: f64,
    pub cmi_min_index: usize,
    pub family_size: usize,
    pub grid: QuantGrid,
    pub coarse_grid_warning: bool,
    pub certificate: PropertyOneCertificate,
    pub g_profile: ChernoffProfile,
    /// False when some `g(θ)` did not settle under step halving.
    pub g_converged: bool,
    /// Whether `beta_lower ≤ beta_upper`; recorded, not required.
    pub ordering_holds: bool,
    pub quadrature_config: String,
}

impl TheoremOneReport {
    pub const CSV_HEADER: &'static str =
        "beta_upper,beta_lower,cmi_nats,cmi_bits,lipschitz_k,delta,epsilon";

    pub fn csv_row(&self) -> String {
        format!(
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}",
            self.beta_upper,
            self.beta_lower,
            self.cmi_used,
            self.cmi_used_bits,
            self.certificate.lipschitz_k,
            self.certificate.endpoint_floor_delta,
            self.certificate.endpoint_width_epsilon
        )
    }
}

/// Certifies the test channel, computes the CMI and the Chernoff profile, and
/// assembles both constants.
pub fn theorem_one_report(
    source: &SourceModel,
    channel: &dyn ObservationChannel,
    tc: &KPeakTestChannel,
    grid: &QuantGrid,
    config: &BoundsConfig,
) -> Result<TheoremOneReport> {
    let certificate =
        check_property_one(tc, channel, &config.certification).map_err(CeoError::Certificate)?;
    let own = TestChannel::KPeak(tc.clone());
    let cmi = quantized_cmi(source, channel, &own, grid)?;
    let family = if config.family.is_empty() {
        vec![own]
    } else {
        config.family.clone()
    };
    let (min_cmi, min_index) = cmi_min(source, channel, &family, grid)?;
    let profile = ChernoffProfile::compute(channel, config.theta_points, config.g_step)?;
    let upper = beta_upper(&certificate, cmi.nats);
    let lower = beta_lower(source, min_cmi.nats, &profile, config.g_floor)?;
    debug_assert!(upper >= 0.0);
    Ok(TheoremOneReport {
        beta_upper: upper,
        beta_lower: lower,
        cmi_used: cmi.nats,
        cmi_used_bits: cmi.bits(),
        cmi_min: min_cmi.nats,
        cmi_min_index: min_index,
        family_size: family.len(),
        grid: *grid,
        coarse_grid_warning: cmi.coarse_warning || min_cmi.coarse_warning,
        g_converged: profile.all_converged(),
        certificate,
        g_profile: profile,
        ordering_holds: lower <= upper,
        quadrature_config: format!(
            "theta midpoint grid {} points, forward step {:e} with one Richardson halving, g floor {:e}",
            config.theta_points, config.g_step, config.g_floor
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{UniformWindowChannel, UninformativeChannel};

    fn cert(k: f64, d: f64) -> PropertyOneCertificate {
        PropertyOneCertificate::new(k, d, 0.1, "fixture").unwrap()
    }

    #[test]
    fn upper_examples() {
        assert_eq!(beta_upper(&cert(1.0, 1.0), 0.0), 0.0);
        assert_eq!(beta_upper(&cert(1.0, 1.0), 1.0), 2.0);
        let a = beta_upper(&cert(1.5, 0.7), 0.3);
        let b = beta_upper(&cert(3.0, 0.7), 0.3);
        assert!((b / a - 4.0).abs() < 1e-12);
    }

    fn flat_profile(g: f64, n: usize) -> ChernoffProfile {
        ChernoffProfile {
            theta_grid: (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect(),
            g_values: vec![g; n],
            delta_step: 1e-3,
            s_optima: vec![0.5; n],
            converged: vec![true; n],
        }
    }

    #[test]
    fn lower_constant_g() {
        let v = beta_lower(&SourceModel::uniform(), 0.8, &flat_profile(2.5, 16), 1e-6).unwrap();
        assert!((v - 0.64 / 6.25).abs() < 1e-12);
        assert_eq!(
            beta_lower(&SourceModel::uniform(), 0.0, &flat_profile(2.5, 16), 1e-6).unwrap(),
            0.0
        );
    }

    #[test]
    fn lower_reports_divergence() {
        let mut p = flat_profile(2.0, 8);
        p.g_values[3] = 0.0;
        match beta_lower(&SourceModel::uniform(), 1.0, &p, 1e-6) {
            Err(CeoError::Divergence(r)) => assert_eq!(r.offending, vec![(p.theta_grid[3], 0.0)]),
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn czz_no_information_is_prior_variance() {
        let v = czz_bound(
            &SourceModel::uniform(),
            &UninformativeChannel,
            1,
            PminMethod::ExactQuadrature,
            200,
        )
        .unwrap();
        assert!((v - 1.0 / 12.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn czz_perfect_information_is_zero() {
        let v = czz_bound_with(&SourceModel::uniform(), 50, |_, _, _| Ok(0.0)).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn czz_window_exact_vs_closed_form() {
        // P_min = (1 − h/2w)/2 for h < 2w, uniform prior
        let w = 0.1;
        let ch = UniformWindowChannel::new(w).unwrap();
        let v = czz_bound(
            &SourceModel::uniform(),
            &ch,
            1,
            PminMethod::ExactQuadrature,
            100,
        )
        .unwrap();
        let closed = |h: f64| {
            if h < 2.0 * w {
                0.5 * h * (1.0 - h) * (1.0 - h / (2.0 * w))
            } else {
                0.0
            }
        };
        let expect = crate::quad::integrate(closed, 0.0, 2.0 * w);
        assert!((v - expect).abs() < 1e-3 * expect, "{v} vs {expect}");
    }
}
