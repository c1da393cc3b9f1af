//! Run settings from a JSON file, overridden field by field by command-line
//! flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::BoundsConfig;
use crate::channels::Channel;
use crate::error::{CeoError, Result};
use crate::info::QuantGrid;
use crate::sim::SimConfig;
use crate::sources::SourceModel;
use crate::test_channel::{KPeakTestChannel, TestChannel};

/// Every field optional; unset fields fall back to the Clayton defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub alpha: Option<f64>,
    pub source: Option<String>,
    pub channel: Option<String>,
    pub peaks: Option<Vec<f64>>,
    pub peak_probs: Option<Vec<f64>>,
    /// `"GX,GY,GU"`.
    pub grid: Option<String>,
    #[serde(rename = "L_list", alias = "l_list")]
    pub l_list: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub theta_grid: Option<usize>,
    pub step: Option<f64>,
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| CeoError::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merged(self, over: Settings) -> Settings {
        Settings {
            alpha: over.alpha.or(self.alpha),
            source: over.source.or(self.source),
            channel: over.channel.or(self.channel),
            peaks: over.peaks.or(self.peaks),
            peak_probs: over.peak_probs.or(self.peak_probs),
            grid: over.grid.or(self.grid),
            l_list: over.l_list.or(self.l_list),
            trials: over.trials.or(self.trials),
            seed: over.seed.or(self.seed),
            out: over.out.or(self.out),
            theta_grid: over.theta_grid.or(self.theta_grid),
            step: over.step.or(self.step),
        }
    }

    pub fn channel(&self) -> Result<Channel> {
        let alpha = self.alpha.unwrap_or(0.75);
        Channel::parse(self.channel.as_deref().unwrap_or("clayton"), alpha).map_err(as_config)
    }

    /// Equal weights when only the offsets are given.
    pub fn test_channel(&self) -> Result<KPeakTestChannel> {
        let peaks = self.peaks.clone().unwrap_or_else(|| vec![0.0, 2.0]);
        let probs = match &self.peak_probs {
            Some(p) => p.clone(),
            None => vec![1.0 / peaks.len().max(1) as f64; peaks.len()],
        };
        KPeakTestChannel::new(peaks, probs).map_err(as_config)
    }

    pub fn source(&self) -> Result<SourceModel> {
        self.source
            .as_deref()
            .unwrap_or("uniform")
            .parse()
            .map_err(as_config)
    }

    pub fn grid(&self) -> Result<QuantGrid> {
        self.grid.as_deref().unwrap_or("64,256,512").parse()
    }

    pub fn bounds_config(&self) -> BoundsConfig {
        let d = BoundsConfig::default();
        BoundsConfig {
            theta_points: self.theta_grid.unwrap_or(d.theta_points),
            g_step: self.step.unwrap_or(d.g_step),
            ..d
        }
    }

    pub fn sim_config(&self) -> Result<SimConfig> {
        let d = SimConfig::clayton_default();
        let config = SimConfig {
            source: self.source()?,
            channel: self.channel()?,
            test_channel: TestChannel::KPeak(self.test_channel()?),
            grid: self.grid()?,
            l_list: self.l_list.clone().unwrap_or(d.l_list),
            trials: self.trials.unwrap_or(d.trials),
            seed: self.seed.unwrap_or(d.seed),
            bounds: self.bounds_config(),
            out: self.out.clone(),
        };
        config.validate()?;
        Ok(config)
    }
}

fn as_config(e: CeoError) -> CeoError {
    match e {
        CeoError::InvalidParameter(m) => CeoError::Config(m),
        other => other,
    }
}

/// Comma-separated reals, e.g. `0,2` or `-1,0.5,3`.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CeoError::Config(format!("bad number '{p}' in '{s}'")))
        })
        .collect()
}

/// Comma-separated agent counts, e.g. `10,30,100`.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CeoError::Config(format!("bad count '{p}' in '{s}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_clayton_setup() {
        let c = Settings::default().sim_config().unwrap();
        assert_eq!(c.l_list, vec![10, 30, 100, 300, 1000]);
        assert_eq!(c.trials, 10_000);
        assert_eq!(
            (c.grid.x_bins, c.grid.y_bins, c.grid.u_bins),
            (64, 256, 512)
        );
        assert_eq!(c.test_channel.as_kpeak().unwrap().probs(), &[0.5, 0.5]);
    }

    #[test]
    fn flags_override_file() {
        let file: Settings =
            serde_json::from_str(r#"{"alpha": 0.6, "trials": 50, "L_list": [5, 6, 7]}"#).unwrap();
        let flags = Settings {
            trials: Some(99),
            ..Settings::default()
        };
        let s = file.merged(flags);
        assert_eq!(s.alpha, Some(0.6));
        assert_eq!(s.trials, Some(99));
        assert_eq!(s.l_list, Some(vec![5, 6, 7]));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<Settings>(r#"{"alpah": 0.6}"#).is_err());
    }

    #[test]
    fn bad_values_are_config_errors() {
        let s = Settings {
            alpha: Some(0.3),
            ..Settings::default()
        };
        assert!(matches!(s.sim_config(), Err(CeoError::Config(_))));
        let s = Settings {
            peaks: Some(vec![0.0]),
            ..Settings::default()
        };
        assert!(matches!(s.sim_config(), Err(CeoError::Config(_))));
        let s = Settings {
            l_list: Some(vec![1]),
            ..Settings::default()
        };
        assert!(matches!(s.sim_config(), Err(CeoError::Config(_))));
    }

    #[test]
    fn list_parsers() {
        assert_eq!(parse_f64_list("-1, 0.5,3").unwrap(), vec![-1.0, 0.5, 3.0]);
        assert_eq!(parse_usize_list("10,30").unwrap(), vec![10, 30]);
        assert!(parse_usize_list("10,x").is_err());
    }
}
