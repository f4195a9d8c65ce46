//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants are grouped by the exit-code class the CLI maps them to:
/// domain errors (bad or degenerate input), numerical failures (an algorithm
/// ran out of budget), and usage errors (unparseable input).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PantsError {
    #[error("singular matrix")]
    SingularMatrix,

    #[error("complex spectrum (discriminant {discriminant:e})")]
    ComplexSpectrum { discriminant: f64 },

    #[error("{what} must be strictly positive and finite, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("lines are not concurrent")]
    NotConcurrent,

    #[error("degenerate pencil")]
    DegeneratePencil,

    #[error("non-generic flags")]
    NonGenericFlags,

    #[error("closed form unavailable; use matrix oracle ({curve})")]
    ClosedFormUnavailable { curve: String },

    #[error("conjugating matrices are only defined on the unipotent leaf")]
    NotUnipotent,

    #[error("stiff segment at t = {t}")]
    StiffSegment { t: f64 },

    #[error("trajectory escaped at t = {t}")]
    TrajectoryEscaped { t: f64 },

    #[error("period not found within t_max = {t_max}")]
    PeriodNotFound { t_max: f64 },

    #[error("below minimum: level {level} <= minimum {minimum}")]
    BelowMinimum { level: f64, minimum: f64 },

    #[error("line search failed after {iterations} iterations (gradient norm {gradient_norm:e})")]
    LineSearch {
        iterations: usize,
        gradient_norm: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl PantsError {
    /// True for failures of a numerical algorithm rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            PantsError::StiffSegment { .. }
                | PantsError::TrajectoryEscaped { .. }
                | PantsError::PeriodNotFound { .. }
                | PantsError::LineSearch { .. }
        )
    }

    /// True for errors caused by malformed input text.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            PantsError::Parse(_) | PantsError::InvalidArgument(_) | PantsError::NonPositive { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, PantsError>;

/// Check that `value` is finite and strictly positive.
pub(crate) fn require_positive(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(PantsError::NonPositive { what, value })
    }
}
