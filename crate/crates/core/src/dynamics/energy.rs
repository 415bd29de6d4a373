//! Beating energies and the per-sector oscillator energies
//! `ξ_i = p_i²/2m + mω² q_i²/2` of the deformed coordinates.
//!
//! The closed forms assume the canonical amplitudes
//! `x = y = √(βħ/2α)`, `π_x = π_y = √(αħ/2β)`. With `σ_i = (−1)^i`,
//! `c = (η/m − mω²θ)/2ħΩ` and `b = (ω/Ω)√(1 − γ²/Ω²)`:
//!
//! ```text
//! ξ_i(t) = (ħΩ/2) {1 − σ_i [c (cos 2γt cos 2Ωt − (γ/Ω) sin 2γt sin 2Ωt) + b sin 2γt]}
//! ```
//!
//! `|c| = √(1 − ω²/Ω²)`; the sign of `c` matters once `mω²θ > η/m` and is
//! fixed by the direct route through the map ([`sector_energy_direct`]).

use serde::Serialize;

use super::{evolve_closed, InitialAmplitudes, Sector, State4};
use crate::error::{Error, Result};
use crate::frequencies::Frequencies;

/// Slack on `|γ| ≤ Ω` and `ω ≤ Ω` for rounding in the derived frequencies.
const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyPair {
    pub xi1: f64,
    pub xi2: f64,
}

impl EnergyPair {
    pub fn get(&self, sector: Sector) -> f64 {
        match sector {
            Sector::One => self.xi1,
            Sector::Two => self.xi2,
        }
    }

    pub fn total(&self) -> f64 {
        self.xi1 + self.xi2
    }
}

/// `(ħΩ/2)(1 − (−1)^i sin 2γt)`.
pub fn beat_energy(f: &Frequencies, sector: Sector, t: f64) -> f64 {
    0.5 * f.quantum() * (1.0 - sector.parity() * (2.0 * f.gamma * t).sin())
}

/// `αβ[(α/β) Q_i² + (β/α) Π_i²]` evaluated on a state.
pub fn beat_energy_from_state(f: &Frequencies, sector: Sector, s: &State4) -> f64 {
    let (q, p) = match sector {
        Sector::One => (s.q1, s.p1),
        Sector::Two => (s.q2, s.p2),
    };
    f.alpha * f.alpha * q * q + f.beta * f.beta * p * p
}

/// Sector energies through the closed-form trajectory and the map back to the
/// deformed coordinates. Valid for any amplitudes.
pub fn sector_energy_direct(f: &Frequencies, ic: &InitialAmplitudes, t: f64) -> EnergyPair {
    let state = evolve_closed(f, ic, t);
    let nc = f.map.forward(&state.into());
    let p = f.params();
    let spring = 0.5 * p.m() * p.omega() * p.omega();
    let kinetic = 0.5 / p.m();
    EnergyPair {
        xi1: kinetic * nc.p[0] * nc.p[0] + spring * nc.q[0] * nc.q[0],
        xi2: kinetic * nc.p[1] * nc.p[1] + spring * nc.q[1] * nc.q[1],
    }
}

fn check_domain(f: &Frequencies) -> Result<()> {
    let limit = f.carrier * (1.0 + DOMAIN_SLACK);
    if f.omega() > limit {
        return Err(Error::Domain(format!(
            "bare frequency {} exceeds carrier {}",
            f.omega(),
            f.carrier
        )));
    }
    if f.gamma.abs() > limit {
        return Err(Error::Domain(format!(
            "beat frequency {} exceeds carrier {}",
            f.gamma, f.carrier
        )));
    }
    Ok(())
}

struct Phases {
    c2g: f64,
    s2g: f64,
    c2o: f64,
    s2o: f64,
}

impl Phases {
    fn at(f: &Frequencies, t: f64) -> Self {
        let (s2g, c2g) = (2.0 * f.gamma * t).sin_cos();
        let (s2o, c2o) = (2.0 * f.carrier * t).sin_cos();
        Self { c2g, s2g, c2o, s2o }
    }
}

/// Closed-form sector energy for canonical amplitudes.
pub fn sector_energy_closed(f: &Frequencies, sector: Sector, t: f64) -> Result<f64> {
    check_domain(f)?;
    let ph = Phases::at(f, t);
    let r = f.ratio();
    let bracket =
        f.carrier_weight * (ph.c2g * ph.c2o - r * ph.s2g * ph.s2o) + f.beat_weight() * ph.s2g;
    Ok(0.5 * f.quantum() * (1.0 - sector.parity() * bracket))
}

/// ±γ/Ω: the carrier weight when only one of θ, η is nonzero.
fn single_deformation_weight(f: &Frequencies) -> f64 {
    let p = f.params();
    if p.eta() == 0.0 && p.theta() != 0.0 {
        -f.ratio()
    } else {
        f.ratio()
    }
}

/// Closed-form sector energy for canonical amplitudes with positions scaled by
/// `s` and momenta by `k`; `s = k = 1` reduces to [`sector_energy_closed`].
///
/// Every deformation term carries a factor `c` or `sin 2γt`, so with θ = η = 0
/// the result is exactly `(s² + k²)ħΩ/4`.
pub fn sector_energy_scaled(
    f: &Frequencies,
    sector: Sector,
    s: f64,
    k: f64,
    t: f64,
) -> Result<f64> {
    check_domain(f)?;
    let ph = Phases::at(f, t);
    let r = f.ratio();
    let c = f.carrier_weight;
    let radial = s * s + k * k;
    let beat = radial * f.beat_weight() * ph.s2g;
    let skew = (s * s - k * k) * c * (ph.c2g * ph.s2o + r * ph.s2g * ph.c2o);
    let cross = 2.0 * s * k * c * (ph.c2g * ph.c2o - r * ph.s2g * ph.s2o);
    Ok(0.25 * f.quantum() * (radial - sector.parity() * (beat - skew + cross)))
}

/// Sector energy when θη = 0, where `Ω² = ω² + γ²`.
pub fn sector_energy_special(f: &Frequencies, sector: Sector, t: f64) -> Result<f64> {
    if !f.params().is_single_deformation() {
        return Err(Error::Precondition(format!(
            "theta = {} and eta = {} are both nonzero",
            f.params().theta(),
            f.params().eta()
        )));
    }
    let ph = Phases::at(f, t);
    let r = f.ratio();
    let w = single_deformation_weight(f);
    let bracket = w * (ph.c2g * ph.c2o - r * ph.s2g * ph.s2o) + (1.0 - r * r) * ph.s2g;
    Ok(0.5 * f.quantum() * (1.0 - sector.parity() * bracket))
}

/// First order in γ: `(ħΩ/2)[1 − (−1)^i (2γt + c cos 2Ωt)]`, which for θ = 0
/// is `(ħΩ/2)[1 − (−1)^i (γ/Ω)(2Ωt + cos 2Ωt)]`.
pub fn sector_energy_linearized(f: &Frequencies, sector: Sector, t: f64) -> f64 {
    let secular = 2.0 * f.gamma * t;
    let carrier = f.carrier_weight * (2.0 * f.carrier * t).cos();
    0.5 * f.quantum() * (1.0 - sector.parity() * (secular + carrier))
}

/// Time derivative of [`sector_energy_closed`].
pub fn sector_power(f: &Frequencies, sector: Sector, t: f64) -> Result<f64> {
    check_domain(f)?;
    let ph = Phases::at(f, t);
    let (g, om) = (f.gamma, f.carrier);
    let r = f.ratio();
    let d_bracket = f.carrier_weight
        * (-4.0 * g * ph.s2g * ph.c2o - 2.0 * (om + g * r) * ph.c2g * ph.s2o)
        + 2.0 * g * f.beat_weight() * ph.c2g;
    Ok(-0.5 * f.quantum() * sector.parity() * d_bracket)
}

/// Time derivative of [`sector_energy_linearized`]; for θ = 0 this is
/// `(−1)^{i+1} ħγΩ (1 − sin 2Ωt)`.
pub fn sector_power_linearized(f: &Frequencies, sector: Sector, t: f64) -> f64 {
    let om = f.carrier;
    -sector.parity() * f.hbar() * om * (f.gamma - om * f.carrier_weight * (2.0 * om * t).sin())
}
