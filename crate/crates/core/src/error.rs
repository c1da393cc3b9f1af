use std::fmt;

use thiserror::Error;

use crate::test_channel::ViolationReport;

pub type Result<T> = std::result::Result<T, CeoError>;

#[derive(Debug, Error)]
pub enum CeoError {
    #[error("x = {0} is outside the channel domain (0, 1]")]
    Domain(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("property 1 violated: {0}")]
    Certificate(ViolationReport),

    #[error("converse bound diverges: {0}")]
    Divergence(DivergenceReport),

    #[error("{method} requires a single observation, got L = {agents}")]
    MethodMismatch { method: &'static str, agents: usize },

    #[error("degenerate exponent fit: {0}")]
    DegenerateFit(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CeoError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        CeoError::InvalidParameter(msg.into())
    }
}

/// Grid points where the Chernoff derivative fell to or below the floor, so
/// that the θ-integral of `f_X/g²` has no finite value.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    pub g_floor: f64,
    pub offending: Vec<(f64, f64)>,
}

impl fmt::Display for DivergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g(θ) ≤ {:e} at", self.g_floor)?;
        for (theta, g) in &self.offending {
            write!(f, " θ={theta:.6} (g={g:e})")?;
        }
        Ok(())
    }
}
