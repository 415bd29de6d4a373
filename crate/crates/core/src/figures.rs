//! Datasets behind the figure presets.
//!
//! All presets default to γ/Ω = 0.002 with `m = ħ = ω = 1`, θ = 0 and η
//! chosen to hit the ratio. Time axes are in units of 1/Ω (columns named
//! `Omega_t`), energies in units of ħΩ and powers in units of ħΩ².

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    beat_energy, sector_energy_closed, sector_power, sector_power_linearized, Sector,
};
use crate::error::{Error, Result};
use crate::frequencies::Frequencies;
use crate::params::NCParams;
use crate::wigner::{
    sk_difference_grid, wigner_sector_time_derivative, Field2D, GridSpec, ModeIndex,
};

/// γ/Ω used by every figure preset.
pub const PRESET_RATIO: f64 = 0.002;

/// Samples per carrier period `π/Ω` of the `2Ω` oscillation on long windows.
pub const ENVELOPE_SAMPLES_PER_PERIOD: usize = 40;
/// Samples per carrier period on zoom windows.
pub const ZOOM_SAMPLES_PER_PERIOD: usize = 200;

/// Mode pairs and amplification factors of the supplementary panels.
pub const SUPPLEMENTARY_PANELS: [(ModeIndex, f64); 3] = [
    (ModeIndex::new(0, 1), 1e2),
    (ModeIndex::new(1, 1), 1e4),
    (ModeIndex::new(2, 5), 1e2),
];

/// Wigner orders plotted in the time-derivative figure.
pub const DERIVATIVE_ORDERS: [u32; 3] = [0, 1, 2];

/// Unit oscillator with only momentum deformation, tuned so that γ/Ω equals
/// `ratio`. With θ = 0 one has γ = η/2 and Ω² = 1 + γ².
pub fn preset_params(ratio: f64) -> NCParams {
    let gamma = ratio / (1.0 - ratio * ratio).sqrt();
    NCParams::new(1.0, 1.0, 1.0, 0.0, 2.0 * gamma)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FigureKind {
    #[serde(rename = "fig1")]
    Fig1,
    #[serde(rename = "fig2")]
    Fig2,
    #[serde(rename = "fig3")]
    Fig3,
    #[serde(rename = "figS")]
    FigS,
}

impl FigureKind {
    pub const ALL: [FigureKind; 4] = [
        FigureKind::Fig1,
        FigureKind::Fig2,
        FigureKind::Fig3,
        FigureKind::FigS,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureKind::Fig1 => "fig1",
            FigureKind::Fig2 => "fig2",
            FigureKind::Fig3 => "fig3",
            FigureKind::FigS => "figS",
        }
    }
}

impl std::fmt::Display for FigureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("UnknownFigure: {0:?} (expected fig1, fig2, fig3 or figS)")]
pub struct UnknownFigure(pub String);

impl FromStr for FigureKind {
    type Err = UnknownFigure;

    fn from_str(s: &str) -> std::result::Result<Self, UnknownFigure> {
        match s {
            "fig1" => Ok(FigureKind::Fig1),
            "fig2" => Ok(FigureKind::Fig2),
            "fig3" => Ok(FigureKind::Fig3),
            "figS" | "figs" => Ok(FigureKind::FigS),
            other => Err(UnknownFigure(other.to_string())),
        }
    }
}

/// Uniform samples of Ωt.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeWindow {
    pub start: f64,
    pub end: f64,
    pub samples: usize,
}

impl TimeWindow {
    pub fn new(start: f64, end: f64, samples: usize) -> Result<Self> {
        let w = Self {
            start,
            end,
            samples,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 2
            || !(self.start.is_finite() && self.end.is_finite())
            || self.end <= self.start
        {
            return Err(Error::Precondition(format!(
                "time window needs samples >= 2 and finite end > start (got {self:?})"
            )));
        }
        Ok(())
    }

    /// `Ωt ∈ [0, 2.5π]`.
    pub fn zoom() -> Self {
        Self::spanning_periods(2.5, ZOOM_SAMPLES_PER_PERIOD)
    }

    /// `γt ∈ [0, 2π]` for γ/Ω = `ratio`, i.e. two beat periods.
    pub fn envelope(ratio: f64) -> Self {
        Self::spanning_periods(2.0 / ratio, ENVELOPE_SAMPLES_PER_PERIOD)
    }

    /// `Ωt ∈ [0, periods·π]` with `per_period` samples per carrier period.
    pub fn spanning_periods(periods: f64, per_period: usize) -> Self {
        let samples = (periods * per_period as f64).round() as usize + 1;
        Self {
            start: 0.0,
            end: periods * PI,
            samples,
        }
    }

    pub fn omega_t(&self, i: usize) -> f64 {
        self.start + (self.end - self.start) * i as f64 / (self.samples - 1) as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.samples).map(|i| self.omega_t(i))
    }
}

/// Named columns of equal length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            headers: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn push(&mut self, header: impl Into<String>, values: Vec<f64>) {
        debug_assert!(self.columns.first().is_none_or(|c| c.len() == values.len()));
        self.headers.push(header.into());
        self.columns.push(values);
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn column(&self, header: &str) -> Option<&[f64]> {
        self.headers
            .iter()
            .position(|h| h == header)
            .map(|i| self.columns[i].as_slice())
    }
}

/// Everything a figure preset needs besides the physical parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureSettings {
    pub zoom: TimeWindow,
    pub envelope: TimeWindow,
    pub grid: GridSpec,
    /// Replaces the per-panel amplification of the supplementary frames.
    pub scale: Option<f64>,
    /// Number of frames `Ωt = ℓπ/8`, ℓ = 1..=frames.
    pub frames: usize,
}

impl Default for FigureSettings {
    fn default() -> Self {
        Self {
            zoom: TimeWindow::zoom(),
            envelope: TimeWindow::envelope(PRESET_RATIO),
            grid: GridSpec::default(),
            scale: None,
            frames: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureData {
    pub kind: FigureKind,
    pub tables: Vec<Table>,
    pub fields: Vec<Field2D>,
}

fn over_window(
    window: &TimeWindow,
    f: &Frequencies,
    mut value: impl FnMut(f64) -> Result<f64>,
) -> Result<Vec<f64>> {
    window.iter().map(|wt| value(wt / f.carrier)).collect()
}

/// Sector energies `ξ_i/ħΩ` with the beating energies `E_i/ħΩ` for reference.
pub fn sector_energy_table(name: &str, f: &Frequencies, window: &TimeWindow) -> Result<Table> {
    let q = f.quantum();
    let mut table = Table::new(name);
    table.push("Omega_t", window.iter().collect());
    for s in Sector::BOTH {
        let i = s.index();
        table.push(
            format!("xi{i}"),
            over_window(window, f, |t| Ok(sector_energy_closed(f, s, t)? / q))?,
        );
    }
    for s in Sector::BOTH {
        let i = s.index();
        table.push(
            format!("beat{i}"),
            over_window(window, f, |t| Ok(beat_energy(f, s, t) / q))?,
        );
    }
    Ok(table)
}

/// `ξ̇_1/ħΩ²` with the first-order modulation line `ħγΩ(1 − sin 2Ωt)/ħΩ²`.
pub fn sector_power_table(name: &str, f: &Frequencies, window: &TimeWindow) -> Result<Table> {
    let unit = f.quantum() * f.carrier;
    let mut table = Table::new(name);
    table.push("Omega_t", window.iter().collect());
    table.push(
        "dxi1",
        over_window(window, f, |t| Ok(sector_power(f, Sector::One, t)? / unit))?,
    );
    table.push(
        "modulation",
        over_window(window, f, |t| {
            Ok(sector_power_linearized(f, Sector::One, t) / unit)
        })?,
    );
    Ok(table)
}

/// `ħ ∂W_n(ξ_1)/∂(Ωt)` for the orders in [`DERIVATIVE_ORDERS`].
pub fn wigner_rate_table(name: &str, f: &Frequencies, window: &TimeWindow) -> Result<Table> {
    let mut table = Table::new(name);
    table.push("Omega_t", window.iter().collect());
    for n in DERIVATIVE_ORDERS {
        table.push(
            format!("dW{n}"),
            over_window(window, f, |t| {
                Ok(wigner_sector_time_derivative(n, f, Sector::One, t)? / f.carrier)
            })?,
        );
    }
    Ok(table)
}

/// The supplementary difference frames at `Ωt = ℓπ/8`.
pub fn supplementary_frames(f: &Frequencies, settings: &FigureSettings) -> Result<Vec<Field2D>> {
    panel_frames(&SUPPLEMENTARY_PANELS, f, settings)
}

/// Difference frames at `Ωt = ℓπ/8` for arbitrary `(mode, scale)` panels,
/// panel-major.
pub fn panel_frames(
    panels: &[(ModeIndex, f64)],
    f: &Frequencies,
    settings: &FigureSettings,
) -> Result<Vec<Field2D>> {
    let mut out = Vec::with_capacity(panels.len() * settings.frames);
    for &(mode, panel_scale) in panels {
        let scale = settings.scale.unwrap_or(panel_scale);
        for ell in 1..=settings.frames {
            let t = ell as f64 * PI / 8.0 / f.carrier;
            out.push(sk_difference_grid(mode, f, t, &settings.grid, scale)?);
        }
    }
    Ok(out)
}

/// Builds the dataset of one figure.
pub fn figure_data(
    kind: FigureKind,
    f: &Frequencies,
    settings: &FigureSettings,
) -> Result<FigureData> {
    settings.zoom.validate()?;
    settings.envelope.validate()?;
    let windows = [("envelope", &settings.envelope), ("zoom", &settings.zoom)];
    let mut tables = Vec::new();
    let mut fields = Vec::new();
    match kind {
        FigureKind::Fig1 => {
            for (w, window) in windows {
                tables.push(sector_energy_table(&format!("fig1_{w}"), f, window)?);
            }
        }
        FigureKind::Fig2 => {
            for (w, window) in windows {
                tables.push(sector_power_table(&format!("fig2_{w}"), f, window)?);
            }
        }
        FigureKind::Fig3 => {
            for (w, window) in windows {
                tables.push(wigner_rate_table(&format!("fig3_{w}"), f, window)?);
            }
        }
        FigureKind::FigS => fields = supplementary_frames(f, settings)?,
    }
    Ok(FigureData {
        kind,
        tables,
        fields,
    })
}
