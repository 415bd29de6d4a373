//! Physical inputs of the oscillator and their validation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mass, bare frequency and action scale of the oscillator together with
/// the position (`theta`) and momentum (`eta`) deformation parameters.
///
/// `[q1, q2] = i·theta` and `[p1, p2] = i·eta`; the canonical pair keeps
/// `[q_i, p_j] = i·hbar·δ_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NCParams {
    pub m: f64,
    pub omega: f64,
    pub hbar: f64,
    pub theta: f64,
    pub eta: f64,
}

impl NCParams {
    pub fn new(m: f64, omega: f64, hbar: f64, theta: f64, eta: f64) -> Self {
        Self {
            m,
            omega,
            hbar,
            theta,
            eta,
        }
    }

    /// Commutative oscillator with unit mass, frequency and action.
    pub fn unit_commutative() -> Self {
        Self::new(1.0, 1.0, 1.0, 0.0, 0.0)
    }

    pub fn validate(&self) -> Result<ValidatedParams> {
        validate(self)
    }
}

impl Default for NCParams {
    fn default() -> Self {
        Self::unit_commutative()
    }
}

/// Parameters that passed [`validate`]; the only way to build a map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ValidatedParams(NCParams);

impl ValidatedParams {
    pub fn get(&self) -> &NCParams {
        &self.0
    }

    pub fn m(&self) -> f64 {
        self.0.m
    }

    pub fn omega(&self) -> f64 {
        self.0.omega
    }

    pub fn hbar(&self) -> f64 {
        self.0.hbar
    }

    pub fn theta(&self) -> f64 {
        self.0.theta
    }

    pub fn eta(&self) -> f64 {
        self.0.eta
    }

    /// Dimensionless deformation strength θη/ħ², always below 1.
    pub fn deformation(&self) -> f64 {
        self.0.theta * self.0.eta / (self.0.hbar * self.0.hbar)
    }

    /// True when at least one of θ, η vanishes.
    pub fn is_single_deformation(&self) -> bool {
        self.0.theta == 0.0 || self.0.eta == 0.0
    }
}

impl std::ops::Deref for ValidatedParams {
    type Target = NCParams;

    fn deref(&self) -> &NCParams {
        &self.0
    }
}

/// Checks positivity of `m`, `omega`, `hbar` and the oscillatory-regime
/// condition `theta * eta < hbar²`.
pub fn validate(params: &NCParams) -> Result<ValidatedParams> {
    let fields = [
        ("m", params.m),
        ("omega", params.omega),
        ("hbar", params.hbar),
        ("theta", params.theta),
        ("eta", params.eta),
    ];
    for (name, value) in fields {
        if !value.is_finite() {
            return Err(Error::NonFinite { name, value });
        }
    }
    for (name, value) in &fields[..3] {
        if *value <= 0.0 {
            return Err(Error::NonPositivePhysical {
                name,
                value: *value,
            });
        }
    }
    let theta_eta = params.theta * params.eta;
    let hbar_sq = params.hbar * params.hbar;
    if theta_eta >= hbar_sq {
        return Err(Error::DegenerateDeformation { theta_eta, hbar_sq });
    }
    Ok(ValidatedParams(*params))
}
