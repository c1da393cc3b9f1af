use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nonregular_ceo::config::{parse_f64_list, parse_usize_list};
use nonregular_ceo::sim::{csv_string, fit_exponent, sweep};
use nonregular_ceo::{
    check_property_one, theorem_one_report, CeoError, ChernoffProfile, Result, Settings,
    TheoremOneReport,
};

#[derive(Parser)]
#[command(
    name = "ceo",
    version,
    about = "Simulate and bound the non-regular CEO problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distortion and rate at a single number of agents.
    Simulate {
        #[command(flatten)]
        shared: Shared,
        /// Number of agents; defaults to the first entry of --L-list.
        #[arg(long)]
        agents: Option<usize>,
    },
    /// Distortion, rate and R²D over the whole agent list.
    Sweep {
        #[command(flatten)]
        shared: Shared,
        /// Also write the full report (bounds, fitted exponent) as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Upper and lower constants on R²D.
    Bounds {
        #[command(flatten)]
        shared: Shared,
    },
    /// g(θ) profile as CSV (theta, g, s_opt).
    Chernoff {
        #[command(flatten)]
        shared: Shared,
    },
    /// Certify the endpoint and Lipschitz conditions for the test channel.
    CheckProperty {
        #[command(flatten)]
        shared: Shared,
    },
}

#[derive(Args, Clone, Default)]
struct Shared {
    #[arg(long)]
    alpha: Option<f64>,
    /// uniform or tgauss:MU:SIGMA
    #[arg(long)]
    source: Option<String>,
    /// clayton or window:W
    #[arg(long)]
    channel: Option<String>,
    /// Peak offsets, e.g. 0,2
    #[arg(long, allow_hyphen_values = true)]
    peaks: Option<String>,
    #[arg(long)]
    peak_probs: Option<String>,
    /// GX,GY,GU
    #[arg(long)]
    grid: Option<String>,
    #[arg(long = "L-list")]
    l_list: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of θ points in the g profile.
    #[arg(long)]
    theta_grid: Option<usize>,
    /// Finite-difference step for g.
    #[arg(long)]
    step: Option<f64>,
}

impl Shared {
    fn settings(&self) -> Result<Settings> {
        let base = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        let flags = Settings {
            alpha: self.alpha,
            source: self.source.clone(),
            channel: self.channel.clone(),
            peaks: self.peaks.as_deref().map(parse_f64_list).transpose()?,
            peak_probs: self.peak_probs.as_deref().map(parse_f64_list).transpose()?,
            grid: self.grid.clone(),
            l_list: self.l_list.as_deref().map(parse_usize_list).transpose()?,
            trials: self.trials,
            seed: self.seed,
            out: self.out.clone(),
            theta_grid: self.theta_grid,
            step: self.step,
        };
        Ok(base.merged(flags))
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { shared, agents } => {
            let settings = shared.settings()?;
            let mut config = settings.sim_config()?;
            config.l_list = vec![agents.unwrap_or(config.l_list[0])];
            config.validate()?;
            let report = sweep(&config)?;
            emit(config.out.as_ref(), &csv_string(&report.rows))
        }
        Command::Sweep {
            shared,
            report: report_path,
        } => {
            let config = shared.settings()?.sim_config()?;
            let report = sweep(&config)?;
            emit(config.out.as_ref(), &csv_string(&report.rows))?;
            if report.coarse_grid_warning {
                eprintln!("warning: u bins are too wide to separate adjacent peaks");
            }
            match fit_exponent(&report.rows) {
                Ok(slope) => eprintln!("fitted exponent: {slope:.4}"),
                Err(e) => eprintln!("fitted exponent unavailable: {e}"),
            }
            if let Some(path) = report_path {
                let exponent = fit_exponent(&report.rows).ok();
                let body = serde_json::json!({ "report": report, "fitted_exponent": exponent });
                emit(Some(&path), &json(&body))?;
            }
            Ok(())
        }
        Command::Bounds { shared } => {
            let settings = shared.settings()?;
            let config = settings.sim_config()?;
            let tc = config
                .test_channel
                .as_kpeak()
                .expect("configured test channel is k-peak");
            let report = theorem_one_report(
                &config.source,
                &config.channel,
                tc,
                &config.grid,
                &config.bounds,
            )?;
            let text = format!(
                "{}{}\n{}\n",
                json(&report),
                TheoremOneReport::CSV_HEADER,
                report.csv_row()
            );
            emit(config.out.as_ref(), &text)
        }
        Command::Chernoff { shared } => {
            let settings = shared.settings()?;
            let channel = settings.channel()?;
            let bounds = settings.bounds_config();
            let profile = ChernoffProfile::compute(&channel, bounds.theta_points, bounds.g_step)?;
            if !profile.all_converged() {
                eprintln!("warning: g did not settle under step halving at some θ");
            }
            emit(settings.out.as_ref(), &profile.to_csv())
        }
        Command::CheckProperty { shared } => {
            let settings = shared.settings()?;
            let channel = settings.channel()?;
            let tc = settings.test_channel()?;
            let cert = check_property_one(&tc, &channel, &settings.bounds_config().certification)
                .map_err(CeoError::Certificate)?;
            emit(settings.out.as_ref(), &json(&cert))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CeoError::Certificate(_) => 2,
                CeoError::Divergence(_) => 3,
                CeoError::Io(_) => 1,
                _ => 4,
            })
        }
    }
}
