use num_complex::Complex64;
use std::path::PathBuf;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate leading coefficient")]
    DegenerateLeadingCoefficient,

    #[error("degree context too small: n = {context} but polynomial has degree {degree}")]
    DegreeContextTooSmall { context: usize, degree: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence {
        iterations: usize,
        best: Vec<Complex64>,
        residuals: Vec<f64>,
    },

    #[error("root near contour |z| = {radius}")]
    RootNearContour { radius: f64 },

    #[error("phase step too large on |z| = {radius} even with {samples} samples")]
    PhaseStepTooLarge { radius: f64, samples: usize },

    #[error("tolerance unattainable at this degree (eps = {eps:e})")]
    ToleranceUnattainable { eps: f64 },

    #[error("unknown inequality id {given:?}; valid ids: {valid}")]
    UnknownInequality { given: String, valid: String },

    #[error("family {family} is not compatible with {id}")]
    IncompatibleFamily { family: String, id: String },

    #[error("family requires |a|=|b|")]
    FamilyRequiresEqualModuli,

    #[error("non-finite value in input")]
    NonFinite,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
