use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error in {param}: {reason}")]
    Domain { param: &'static str, reason: String },
    /// Two points of different dimension were combined.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    /// A finite-difference stencil would leave the unit ball.
    #[error("finite-difference stencil leaves the ball (|x| + h*sqrt(n) = {reach})")]
    StencilOutsideBall { reach: f64 },
    /// `s` sits on the pole lattice of the continued coefficient.
    #[error("s = {s} is not a pole of the continued coefficient (residue estimate {estimate})")]
    NotAPole { s: f64, estimate: f64 },
    /// A truncated series did not reach the requested tolerance.
    #[error("series truncated at M = {truncation} with tail estimate {tail} above tolerance {tolerance}")]
    Truncation {
        truncation: usize,
        tail: f64,
        tolerance: f64,
    },
    /// Dividing by the radial profile would amplify roundoff beyond repair.
    #[error("radial profile r^m S_m(r^2) = {value} at m = {mode} is below the extraction threshold")]
    Underflow { mode: usize, value: f64 },
    /// A series failed to converge within its iteration budget.
    #[error("series did not converge: {0}")]
    NoConvergence(&'static str),
    #[error("empty input: {0}")]
    Empty(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(param: &'static str, reason: impl Into<String>) -> Error {
    Error::Domain {
        param,
        reason: reason.into(),
    }
}
