use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("charge basis too small: n_max = {n_max}, need at least {min}")]
    BasisTooSmall { n_max: usize, min: usize },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("ground state nearly degenerate at (phi = {phi}, q = {q}): gap {gap:e} below {threshold:e}")]
    NearDegenerate { phi: f64, q: f64, gap: f64, threshold: f64 },

    #[error("{what} undefined at (phi = {phi}, q = {q})")]
    Undefined { what: &'static str, phi: f64, q: f64 },

    #[error("discretization too coarse near (phi = {phi}, q = {q}): neighbour overlap {overlap:.3} below 0.5")]
    CoarseDiscretization { phi: f64, q: f64, overlap: f64 },

    #[error("eigensolver failed to converge ({context})")]
    NoConvergence { context: &'static str },

    #[error("time step {dt:e} too coarse: dt * |dH| = {measure:.3e} exceeds {limit}; try dt <= {suggested:e}")]
    InvalidTimeStep { dt: f64, measure: f64, limit: f64, suggested: f64 },

    #[error("integration lost unitarity: norm drift {drift:e} exceeds {limit:e}; try dt <= {suggested:e}")]
    IntegrationFailure { drift: f64, limit: f64, suggested: f64 },

    #[error("noise spectrum not resolvable: {reason}")]
    InvalidSpectrum { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}

pub(crate) fn require_finite(x: f64, name: &'static str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be finite, got {x}")))
    }
}
