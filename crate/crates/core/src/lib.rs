//! Simulation and bound evaluation for the CEO problem with non-regular
//! sources.
//!
//! Agents observe a source `X ∈ [0, 1]` through a conditional law `W(y|x)`
//! whose support moves with `x` (the Clayton channel by default), pass their
//! observations through a k-peak test channel and send them to a central
//! estimator that decodes with a midrange inverse. The crate simulates that
//! pipeline, accounts rates with quantized conditional mutual information and
//! evaluates both sides of the `R²D` sandwich.
//!
//! ```
//! use nonregular_ceo::{ChannelAt, ClaytonChannel, ObservationChannel};
//!
//! let w = ClaytonChannel::new(0.75).unwrap();
//! let (lo, hi) = w.support(0.5);
//! assert!(lo > 0.0 && hi == 1.0);
//! assert!(ChannelAt::new(&w, 0.0).is_err());
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod channels;
pub mod config;
pub mod error;
pub mod info;
pub mod minimize;
pub mod quad;
pub mod sim;
pub mod sources;
pub mod stats;
pub mod test_channel;

pub use bounds::{
    beta_lower, beta_upper, czz_bound, czz_bound_with, theorem_one_report, BoundsConfig, Prior,
    TheoremOneReport,
};
pub use channels::{
    obs_cdf, obs_density, obs_quantile, obs_sample, obs_support, Channel, ChannelAt,
    ClaytonChannel, Law, ObservationChannel, TriangularWindowChannel, UniformLaw,
    UniformWindowChannel, UninformativeChannel,
};
pub use config::Settings;
pub use error::{CeoError, DivergenceReport, Result};
pub use info::{
    chernoff_between, chernoff_derivative_g, chernoff_info, cmi_min, mediant_min, min_error_prob,
    quantized_cmi, Chernoff, ChernoffProfile, CmiResult, GEstimate, JointMass, MinErrorProb,
    PminMethod, QuantGrid,
};
pub use sim::{
    estimate_distortion, extreme_statistics, fit_exponent, midrange_estimate, rate_for, run_trial,
    sweep, DistortionEstimate, SimConfig, SweepReport, SweepRow, Trial,
};
pub use sources::{SourceKind, SourceModel};
pub use test_channel::{
    check_property_one, CertificationGrid, KPeakTestChannel, PropertyOneCertificate,
    PureNoiseChannel, TestChannel, Violation, ViolationReport,
};
