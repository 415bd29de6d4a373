//! Wigner stargenfunctions of the oscillator.
//!
//! Two families are evaluated:
//!
//! * the 2-dim eigenfunctions in canonical variables,
//!   `ρ_{n1,n2} = (−1)^{n1+n2}/(π²ħ²) · exp[−R/ħ] · L_{n1}(Ω₊/ħ) · L_{n2}(Ω₋/ħ)`
//!   with `R = (α/β)Q² + (β/α)Π²` and `Ω± = R ∓ 2 Σ ε_ij Π_i Q_j`;
//! * the 1-dim sector functions of an energy,
//!   `ħW_n(ξ) = (1/π) · exp(−2ξ/ħΩ) · L_n(4ξ/ħΩ)`, which become time dependent
//!   because the sector energies ξ_i(t) are.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{sector_energy_closed, sector_energy_scaled, sector_power, Sector, State4};
use crate::error::{Error, Result};
use crate::frequencies::Frequencies;
use crate::laguerre::{laguerre, laguerre_derivative};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub n1: u32,
    pub n2: u32,
}

impl ModeIndex {
    pub const fn new(n1: u32, n2: u32) -> Self {
        Self { n1, n2 }
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.n1, self.n2)
    }
}

/// `Ω₊` and `Ω₋` of a canonical state.
pub fn omega_pm(f: &Frequencies, state: &State4) -> (f64, f64) {
    let r = radial_form(f, state);
    // Σ ε_ij Π_i Q_j = Π1 Q2 − Π2 Q1
    let cross = state.p1 * state.q2 - state.p2 * state.q1;
    (r - 2.0 * cross, r + 2.0 * cross)
}

fn radial_form(f: &Frequencies, s: &State4) -> f64 {
    f.alpha / f.beta * (s.q1 * s.q1 + s.q2 * s.q2) + f.beta / f.alpha * (s.p1 * s.p1 + s.p2 * s.p2)
}

/// The 2-dim stargenfunction `ρ_{n1,n2}` at a canonical phase-space point,
/// in units of 1/action².
pub fn nc_wigner_2d(mode: ModeIndex, state: &State4, f: &Frequencies) -> f64 {
    let hbar = f.hbar();
    nc_wigner_2d_scaled(mode, state, f) / (PI * PI * hbar * hbar)
}

/// `π²ħ² ρ_{n1,n2}`, dimensionless.
pub fn nc_wigner_2d_scaled(mode: ModeIndex, state: &State4, f: &Frequencies) -> f64 {
    let hbar = f.hbar();
    let (op, om) = omega_pm(f, state);
    let sign = if (mode.n1 + mode.n2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    sign * (-radial_form(f, state) / hbar).exp()
        * laguerre(mode.n1 as usize, op / hbar)
        * laguerre(mode.n2 as usize, om / hbar)
}

/// `E_{n1,n2} = ħ[Ω(n1 + n2 + 1) + γ(n1 − n2)]`.
pub fn spectrum(mode: ModeIndex, f: &Frequencies) -> f64 {
    let (n1, n2) = (mode.n1 as f64, mode.n2 as f64);
    f.hbar() * (f.carrier * (n1 + n2 + 1.0) + f.gamma * (n1 - n2))
}

fn check_energy(xi: f64) -> Result<()> {
    if xi >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "sector energy must be non-negative (got {xi})"
        )))
    }
}

/// `ħW_n(ξ)`, dimensionless.
pub fn wigner_sector(n: u32, xi: f64, f: &Frequencies) -> Result<f64> {
    check_energy(xi)?;
    let x = 4.0 * xi / f.quantum();
    Ok((-0.5 * x).exp() * laguerre(n as usize, x) / PI)
}

/// `d(ħW_n)/dξ`, in 1/energy.
pub fn wigner_sector_energy_derivative(n: u32, xi: f64, f: &Frequencies) -> Result<f64> {
    check_energy(xi)?;
    let x = 4.0 * xi / f.quantum();
    let n = n as usize;
    let d_dx = (-0.5 * x).exp() * (laguerre_derivative(n, x) - 0.5 * laguerre(n, x)) / PI;
    Ok(d_dx * 4.0 / f.quantum())
}

/// `ħ ∂W_n(ξ_i(t))/∂t` for canonical amplitudes, by the chain rule through
/// the closed-form sector energy and its derivative.
pub fn wigner_sector_time_derivative(
    n: u32,
    f: &Frequencies,
    sector: Sector,
    t: f64,
) -> Result<f64> {
    let xi = sector_energy_closed(f, sector, t)?;
    let rate = sector_power(f, sector, t)?;
    Ok(wigner_sector_energy_derivative(n, xi.max(0.0), f)? * rate)
}

/// Rectangular sampling of the dimensionless `(s, k)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub ns: usize,
    pub nk: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            s_min: -3.0,
            s_max: 3.0,
            k_min: -3.0,
            k_max: 3.0,
            ns: 201,
            nk: 201,
        }
    }
}

impl GridSpec {
    pub fn new(
        s_min: f64,
        s_max: f64,
        k_min: f64,
        k_max: f64,
        ns: usize,
        nk: usize,
    ) -> Result<Self> {
        let g = Self {
            s_min,
            s_max,
            k_min,
            k_max,
            ns,
            nk,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ns < 2 || self.nk < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 samples per axis (got {}x{})",
                self.ns, self.nk
            )));
        }
        let bounds = [self.s_min, self.s_max, self.k_min, self.k_max];
        if bounds.iter().any(|v| !v.is_finite())
            || self.s_max <= self.s_min
            || self.k_max <= self.k_min
        {
            return Err(Error::InvalidGrid(format!(
                "bounds must be finite with max > min (got {bounds:?})"
            )));
        }
        Ok(())
    }

    pub fn s(&self, i: usize) -> f64 {
        self.s_min + (self.s_max - self.s_min) * i as f64 / (self.ns - 1) as f64
    }

    pub fn k(&self, j: usize) -> f64 {
        self.k_min + (self.k_max - self.k_min) * j as f64 / (self.nk - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.ns * self.nk
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldMeta {
    /// Ωt of the frame.
    pub omega_t: f64,
    pub mode: ModeIndex,
    pub scale: f64,
}

/// Samples on a [`GridSpec`]; `values[i * nk + j]` sits at `(s_i, k_j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Field2D {
    pub grid: GridSpec,
    pub values: Vec<f64>,
    pub meta: FieldMeta,
}

impl Field2D {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.nk + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|v(s_i, k_j) − v(s_j, k_i)|`; requires a square, symmetric grid.
    pub fn swap_asymmetry(&self) -> Option<f64> {
        let g = &self.grid;
        if g.ns != g.nk || g.s_min != g.k_min || g.s_max != g.k_max {
            return None;
        }
        let mut worst = 0.0f64;
        for i in 0..g.ns {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        Some(worst)
    }
}

/// Difference between the deformed sector-product Wigner function and its
/// commutative counterpart over the `(s, k)` plane at time `t`:
///
/// `π²·ħW_{n1}(ξ_1)·ħW_{n2}(ξ_2) − π²·ħW_{n1}(ξ_c)·ħW_{n2}(ξ_c)`, times `scale`,
///
/// where `ξ_i` are the sector energies of canonical amplitudes scaled by
/// `(s, k)` and `ξ_c = (s² + k²)ħΩ/4` is their common value without
/// deformation.
pub fn sk_difference_grid(
    mode: ModeIndex,
    f: &Frequencies,
    t: f64,
    grid: &GridSpec,
    scale: f64,
) -> Result<Field2D> {
    grid.validate()?;
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "scale must be finite and positive (got {scale})"
        )));
    }
    let quarter = 0.25 * f.quantum();
    let pi_sq = PI * PI;
    let values = (0..grid.ns)
        .into_par_iter()
        .map(|i| {
            let s = grid.s(i);
            (0..grid.nk)
                .map(|j| {
                    let k = grid.k(j);
                    let xi1 = sector_energy_scaled(f, Sector::One, s, k, t)?;
                    let xi2 = sector_energy_scaled(f, Sector::Two, s, k, t)?;
                    let xi_c = quarter * (s * s + k * k);
                    let nc = wigner_sector(mode.n1, xi1, f)? * wigner_sector(mode.n2, xi2, f)?;
                    let comm = wigner_sector(mode.n1, xi_c, f)? * wigner_sector(mode.n2, xi_c, f)?;
                    Ok(scale * pi_sq * (nc - comm))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(Field2D {
        grid: *grid,
        values,
        meta: FieldMeta {
            omega_t: f.carrier * t,
            mode,
            scale,
        },
    })
}
