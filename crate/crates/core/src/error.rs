use std::fmt;

use thiserror::Error;

/// Why a state fails the attractive-potential gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateReason {
    /// `l = 0` removes the 1/ρ term entirely.
    ZeroAngularMomentum,
    /// `λ_m · l > 0`: the 1/ρ term is repulsive.
    RepulsiveSign,
}

impl GateReason {
    pub fn as_str(self) -> &'static str {
        match self {
            GateReason::ZeroAngularMomentum => "l = 0",
            GateReason::RepulsiveSign => "repulsive sign",
        }
    }
}

impl fmt::Display for GateReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParams { field: &'static str, reason: String },

    #[error("no bound state for l = {l}: {reason}")]
    GateViolation { l: i64, reason: GateReason },

    #[error("oscillator frequency must be > 0 (got {0})")]
    InvalidFrequency(f64),

    #[error("oscillator-mode states start at n = 1 (got n = {0})")]
    GroundStateViolation(u32),

    #[error("series did not converge after {terms} terms")]
    NoConvergence { terms: usize },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("not supported: {0}")]
    NotSupported(String),

    #[error("no admissible frequency for n = {n}, l = {l}")]
    NoAdmissibleFrequency { n: u32, l: i64 },

    #[error("invalid grid: {0}")]
    GridError(String),

    #[error("eigensolver failed: {0}")]
    ConvergenceFailure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable tag for error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams { .. } => "InvalidParams",
            Error::GateViolation { .. } => "GateViolation",
            Error::InvalidFrequency(_) => "InvalidFrequency",
            Error::GroundStateViolation(_) => "GroundStateViolation",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::QuadratureFailure(_) => "QuadratureFailure",
            Error::NotSupported(_) => "NotSupported",
            Error::NoAdmissibleFrequency { .. } => "NoAdmissibleFrequency",
            Error::GridError(_) => "GridError",
            Error::ConvergenceFailure(_) => "ConvergenceFailure",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
