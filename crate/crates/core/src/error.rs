use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NonPositivePhysical: {name} must be strictly positive (got {value})")]
    NonPositivePhysical { name: &'static str, value: f64 },

    #[error("NonFinite: {name} must be finite (got {value})")]
    NonFinite { name: &'static str, value: f64 },

    /// θη ≥ ħ²: the Seiberg-Witten map is singular or the carrier frequency is imaginary.
    #[error("DegenerateDeformation: theta*eta = {theta_eta} must be below hbar^2 = {hbar_sq}")]
    DegenerateDeformation { theta_eta: f64, hbar_sq: f64 },

    #[error("InvalidGauge: gauge ratio must be finite and positive (got {0})")]
    InvalidGauge(f64),

    /// An internal identity did not hold; this always indicates a bug.
    #[error("ConsistencyFailure: {0}")]
    ConsistencyFailure(String),

    #[error("DomainError: {0}")]
    Domain(String),

    #[error("PreconditionError: {0}")]
    Precondition(String),

    #[error("InvalidGrid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
