use alloc::string::String;
use core::fmt;

/// Errors surfaced by the analytic and simulation pipelines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Distribution components violate an invariant (weights, positivity).
    InvalidDistribution(String),
    /// Model parameters out of range (arrival rate, threshold).
    InvalidParams(String),
    /// A distribution literal could not be parsed.
    ParseLiteral(String),
    /// No service mass above the threshold: the post-threshold kernels are
    /// undefined and their paths must be zero-weighted.
    DegenerateTail,
    /// Numerical differentiation of a transform failed to converge, usually
    /// because a cycle moment is not finite.
    NonFiniteMoment,
    /// The tail probability never crossed the requested level inside the
    /// search bracket.
    BracketFailure,
    /// A refinement bracket does not contain an interior minimum.
    InvalidBracket,
    /// Simulation configuration out of range.
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDistribution(msg) => write!(f, "invalid service distribution: {msg}"),
            Error::InvalidParams(msg) => write!(f, "invalid model parameters: {msg}"),
            Error::ParseLiteral(msg) => write!(f, "cannot parse distribution literal: {msg}"),
            Error::DegenerateTail => {
                write!(f, "no service mass above the threshold; tail kernels undefined")
            }
            Error::NonFiniteMoment => write!(f, "transform moment did not converge"),
            Error::BracketFailure => write!(f, "tail probability does not cross target in bracket"),
            Error::InvalidBracket => write!(f, "bracket does not enclose an interior minimum"),
            Error::InvalidConfig(msg) => write!(f, "invalid simulation config: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
