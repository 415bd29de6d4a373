//! Run configuration: a JSON file merged with command-line overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use ncho::{GridSpec, InitialAmplitudes, ModeIndex, NCParams};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Initial amplitudes: canonical ones scaled by `(s, k)`, or given outright.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ics {
    Canonical { s: f64, k: f64 },
    Explicit(InitialAmplitudes),
}

impl Default for Ics {
    fn default() -> Self {
        Ics::Canonical { s: 1.0, k: 1.0 }
    }
}

/// Sample times in units of 1/Ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub samples: usize,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            t_start: 0.0,
            t_end: 100.0,
            samples: 1001,
        }
    }
}

impl TimeGrid {
    fn validate(&self) -> CliResult<()> {
        if self.samples < 2
            || !self.t_start.is_finite()
            || !self.t_end.is_finite()
            || self.t_end <= self.t_start
        {
            return Err(CliError::Config(format!(
                "time_grid needs samples >= 2 and finite t_end > t_start (got {self:?})"
            )));
        }
        Ok(())
    }

    pub fn omega_t(&self) -> Vec<f64> {
        let n = self.samples - 1;
        (0..=n)
            .map(|i| self.t_start + (self.t_end - self.t_start) * i as f64 / n as f64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub format: Format,
    pub path: Option<PathBuf>,
    /// Replaces the per-panel amplification of supplementary frames.
    pub scale: Option<f64>,
}

/// Contents of a `--config` file. Every field is optional; absent parameters
/// fall back to the per-command defaults.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub params: Option<NCParams>,
    pub gauge_ratio: Option<f64>,
    pub ics: Option<Ics>,
    pub time_grid: Option<TimeGrid>,
    /// Mode pairs for supplementary frames (defaults to the preset panels).
    pub modes: Option<Vec<ModeIndex>>,
    pub grid: Option<GridSpec>,
    /// RK4 steps for `--oracle`; defaults to 1000 per unit of Ωt.
    pub oracle_steps: Option<usize>,
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub gauge_ratio: Option<f64>,
    pub scale: Option<f64>,
}

/// A configuration with every default filled in; recorded verbatim in the
/// dataset metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolved {
    pub params: NCParams,
    pub gauge_ratio: f64,
    pub ics: Ics,
    /// Sample grid in Ωt; `None` keeps a command's built-in windows.
    pub time_grid: Option<TimeGrid>,
    pub modes: Option<Vec<ModeIndex>>,
    pub grid: GridSpec,
    pub oracle_steps: usize,
    pub format: Format,
    pub out: PathBuf,
    pub scale: Option<f64>,
}

impl Resolved {
    pub fn new(
        file: RunConfig,
        cli: Overrides,
        default_params: NCParams,
        default_grid: Option<TimeGrid>,
    ) -> CliResult<Self> {
        let time_grid = file.time_grid.or(default_grid);
        if let Some(tg) = &time_grid {
            tg.validate()?;
        }
        let scale = cli.scale.or(file.output.scale);
        if let Some(s) = scale {
            if !(s.is_finite() && s > 0.0) {
                return Err(CliError::Config(format!(
                    "scale must be finite and positive (got {s})"
                )));
            }
        }
        let span = time_grid.map_or(0.0, |tg| tg.t_end.abs().max(tg.t_start.abs()));
        let oracle_steps = file
            .oracle_steps
            .unwrap_or(((1000.0 * span).ceil() as usize).max(1000));
        if oracle_steps == 0 {
            return Err(CliError::Config("oracle_steps must be positive".into()));
        }
        Ok(Self {
            params: file.params.unwrap_or(default_params),
            gauge_ratio: cli.gauge_ratio.or(file.gauge_ratio).unwrap_or(1.0),
            ics: file.ics.unwrap_or_default(),
            time_grid,
            modes: file.modes,
            grid: file.grid.unwrap_or_default(),
            oracle_steps,
            format: cli.format.unwrap_or(file.output.format),
            out: cli
                .out
                .or(file.output.path)
                .unwrap_or_else(|| PathBuf::from(".")),
            scale,
        })
    }
}
