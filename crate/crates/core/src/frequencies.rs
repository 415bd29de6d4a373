//! Effective coefficients of the oscillator written in canonical variables,
//!
//! ```text
//! H = α² Q² + β² Π² + γ Σ ε_ij Π_i Q_j
//! ```
//!
//! and the carrier frequency `Ω = 2αβ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::ValidatedParams;
use crate::sw::SWMap;

/// Relative tolerance of the `Ω² = ω²(2λμ − 1)² + γ²` cross-check.
pub const OMEGA_IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Frequencies {
    pub alpha: f64,
    pub beta: f64,
    /// Beat angular frequency γ.
    pub gamma: f64,
    /// Carrier angular frequency Ω = 2αβ.
    pub carrier: f64,
    /// `(η/m − mω²θ) / 2ħΩ`, the signed amplitude of the `2Ω` carrier in the
    /// sector energies. Its magnitude is `√(1 − ω²/Ω²)`.
    pub carrier_weight: f64,
    pub map: SWMap,
}

impl Frequencies {
    pub fn params(&self) -> &ValidatedParams {
        &self.map.params
    }

    /// Bare frequency ω.
    pub fn omega(&self) -> f64 {
        self.map.params.omega()
    }

    pub fn hbar(&self) -> f64 {
        self.map.params.hbar()
    }

    /// γ/Ω.
    pub fn ratio(&self) -> f64 {
        self.gamma / self.carrier
    }

    /// `ω²(1 − θη/ħ²) + γ²`, the gauge-free expression for Ω².
    pub fn carrier_sq_reference(&self) -> f64 {
        let w = self.omega();
        w * w * (1.0 - self.params().deformation()) + self.gamma * self.gamma
    }

    /// `(ω/Ω)·√(1 − γ²/Ω²)`, the weight of the slow `sin 2γt` term.
    pub fn beat_weight(&self) -> f64 {
        let w = self.omega();
        // √(Ω² − γ²) = ω√(1 − θη/ħ²)
        w * w * (1.0 - self.params().deformation()).sqrt() / (self.carrier * self.carrier)
    }

    /// `ħΩ`.
    pub fn quantum(&self) -> f64 {
        self.hbar() * self.carrier
    }
}

/// Derives α, β, γ, Ω from a map and checks the carrier identity.
pub fn frequencies(sw: &SWMap) -> Result<Frequencies> {
    let p = sw.params;
    let (m, w, hbar, theta, eta) = (p.m(), p.omega(), p.hbar(), p.theta(), p.eta());
    let (lambda, mu) = (sw.lambda, sw.mu);

    let alpha_sq =
        m * w * w * lambda * lambda / 2.0 + eta * eta / (8.0 * m * hbar * hbar * mu * mu);
    let beta_sq =
        mu * mu / (2.0 * m) + m * w * w * theta * theta / (8.0 * hbar * hbar * lambda * lambda);
    let gamma = m * w * w * theta / (2.0 * hbar) + eta / (2.0 * m * hbar);
    let alpha = alpha_sq.sqrt();
    let beta = beta_sq.sqrt();
    let carrier = 2.0 * alpha * beta;

    let two_u = 2.0 * sw.product() - 1.0;
    let expected = w * w * two_u * two_u + gamma * gamma;
    let rel = (carrier * carrier - expected).abs() / (carrier * carrier);
    if rel.is_nan() || rel >= OMEGA_IDENTITY_TOL {
        return Err(Error::ConsistencyFailure(format!(
            "Omega^2 = {} but omega^2 (2 lambda mu - 1)^2 + gamma^2 = {expected} (relative {rel:e})",
            carrier * carrier
        )));
    }

    let carrier_weight = (eta / m - m * w * w * theta) / (2.0 * hbar * carrier);
    Ok(Frequencies {
        alpha,
        beta,
        gamma,
        carrier,
        carrier_weight,
        map: *sw,
    })
}

impl TryFrom<&SWMap> for Frequencies {
    type Error = Error;

    fn try_from(sw: &SWMap) -> Result<Self> {
        frequencies(sw)
    }
}
