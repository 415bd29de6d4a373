//! Phase-space noncommutative harmonic oscillator in two dimensions.
//!
//! The crate maps the deformed algebra `[q1, q2] = iθ`, `[p1, p2] = iη` onto
//! ordinary canonical variables with a linear Seiberg-Witten map, evolves the
//! Weyl-symbol means in closed form and with an independent integrator, and
//! evaluates the per-sector energies and Wigner stargenfunctions whose
//! non-stationary behaviour is the time-crystal signature.
//!
//! ```
//! use ncho::{NCParams, solve_sw, frequencies};
//!
//! let params = NCParams::new(1.0, 1.0, 1.0, 0.1, 0.1).validate()?;
//! let f = frequencies(&solve_sw(params, 1.0)?)?;
//! assert!((f.gamma - 0.1).abs() < 1e-15);
//! assert!((f.carrier - 1.0).abs() < 1e-14);
//! # Ok::<(), ncho::Error>(())
//! ```

pub mod dynamics;
pub mod error;
pub mod figures;
pub mod frequencies;
pub mod laguerre;
pub mod params;
pub mod sw;
pub mod wigner;

pub use dynamics::{
    beat_energy, beat_energy_from_state, eom_rhs, evolve_closed, integrate_oracle, invariants,
    sector_energy_closed, sector_energy_direct, sector_energy_linearized, sector_energy_scaled,
    sector_energy_special, sector_power, sector_power_linearized, EnergyPair, InitialAmplitudes,
    Invariants, Sector, State4,
};
pub use error::{Error, Result};
pub use frequencies::{frequencies, Frequencies};
pub use params::{validate, NCParams, ValidatedParams};
pub use sw::{
    constraint_residuals, solve_sw, sw_forward, sw_inverse, ConstraintReport, PhasePoint, SWMap,
};
pub use wigner::{
    nc_wigner_2d, sk_difference_grid, spectrum, wigner_sector, wigner_sector_time_derivative,
    Field2D, GridSpec, ModeIndex,
};

/// Builds validated parameters, the map in the given gauge and the derived
/// frequencies in one step.
pub fn setup(params: &NCParams, gauge_ratio: f64) -> Result<Frequencies> {
    frequencies(&solve_sw(params.validate()?, gauge_ratio)?)
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sw_map.md")]
    mod sw_map {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/sector_energies.md")]
    mod sector_energies {}
    #[doc = include_str!("../../../book/src/wigner.md")]
    mod wigner {}
    #[doc = include_str!("../../../book/src/figures.md")]
    mod figures {}
}
