use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generation {0} exceeds the dyadic generation cap {cap}", cap = crate::circle::MAX_GENERATION)]
    GenerationCap(u32),
    #[error("arc length {0} is outside (0, 1]")]
    BadArcLength(f64),
    #[error("closed set is inconsistent: {0}")]
    BadClosedSet(String),
    #[error("arc of length {0} is below the minimum resolution {1}")]
    DegenerateArc(f64, f64),
    #[error("grid has {have} generations but {need} are required")]
    GridTooShallow { have: usize, need: usize },
    #[error("gauge table cannot be continued: {0}")]
    GridExhausted(String),
    #[error("modulus of continuity violates monotonicity of w(eps)/eps at eps={0}")]
    MonotonicityViolation(f64),
    #[error("support of the measure is not contained in the supplied set (atom at {0} turns)")]
    SupportNotContained(f64),
    #[error("target arcs overlap")]
    TargetsOverlap,
    #[error("shooting bracket failure: {0}")]
    ShootingFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
