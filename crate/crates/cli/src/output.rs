//! Dataset writers. CSV files carry `#` comment lines with run metadata (no
//! timestamps, so reruns are byte-identical) and floats with 17 significant
//! digits. Every dataset gets a `<name>.meta.json` sidecar.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use ncho::figures::Table;
use ncho::{Field2D, Frequencies};

use crate::config::{Format, Resolved};
use crate::error::{CliError, CliResult};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Float text used in CSV bodies and comments.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedFrequencies {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub carrier: f64,
    pub gamma_over_omega: f64,
    pub carrier_weight: f64,
    pub beat_weight: f64,
    pub lambda: f64,
    pub mu: f64,
}

impl From<&Frequencies> for DerivedFrequencies {
    fn from(f: &Frequencies) -> Self {
        Self {
            alpha: f.alpha,
            beta: f.beta,
            gamma: f.gamma,
            carrier: f.carrier,
            gamma_over_omega: f.ratio(),
            carrier_weight: f.carrier_weight,
            beat_weight: f.beat_weight(),
            lambda: f.map.lambda,
            mu: f.map.mu,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DatasetMeta<'a> {
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub dataset: &'a str,
    pub file: String,
    pub columns: Vec<String>,
    pub units: &'a str,
    pub config: &'a Resolved,
    pub frequencies: DerivedFrequencies,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<serde_json::Value>,
    pub timestamp_unix: u64,
}

/// What is known about a dataset besides its numbers.
pub struct Dataset<'a> {
    pub name: &'a str,
    pub units: &'a str,
    pub config: &'a Resolved,
    pub frequencies: &'a Frequencies,
    pub extra: Option<serde_json::Value>,
}

impl Dataset<'_> {
    fn comments(&self) -> Vec<String> {
        let p = &self.config.params;
        let f = self.frequencies;
        vec![
            format!("ncho {TOOL_VERSION}"),
            format!("dataset: {}", self.name),
            format!("units: {}", self.units),
            format!(
                "params: m={} omega={} hbar={} theta={} eta={}",
                fmt_f64(p.m),
                fmt_f64(p.omega),
                fmt_f64(p.hbar),
                fmt_f64(p.theta),
                fmt_f64(p.eta)
            ),
            format!("gauge_ratio: {}", fmt_f64(self.config.gauge_ratio)),
            format!(
                "alpha={} beta={} gamma={} Omega={}",
                fmt_f64(f.alpha),
                fmt_f64(f.beta),
                fmt_f64(f.gamma),
                fmt_f64(f.carrier)
            ),
            format!("gamma_over_omega: {}", fmt_f64(f.ratio())),
        ]
    }

    fn path(&self) -> PathBuf {
        self.config
            .out
            .join(format!("{}.{}", self.name, self.config.format.extension()))
    }

    fn write_sidecar(&self, data_path: &Path, columns: Vec<String>) -> CliResult<PathBuf> {
        let meta = DatasetMeta {
            tool: "ncho",
            tool_version: TOOL_VERSION,
            dataset: self.name,
            file: data_path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            columns,
            units: self.units,
            config: self.config,
            frequencies: self.frequencies.into(),
            extra: self.extra.clone(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        };
        let path = self.config.out.join(format!("{}.meta.json", self.name));
        write_json(&path, &meta)?;
        Ok(path)
    }
}

fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> CliResult<()> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn write_csv(
    path: &Path,
    comments: &[String],
    headers: &[String],
    rows: impl Iterator<Item = Vec<String>>,
) -> CliResult<()> {
    let io = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(err) => CliError::io(path, err),
        other => CliError::Config(format!("{other:?}")),
    };
    let mut buf = Vec::new();
    for c in comments {
        buf.extend_from_slice(format!("# {c}\n").as_bytes());
    }
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(headers).map_err(io)?;
        for row in rows {
            w.write_record(&row).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::io(path, e))?;
    }
    fs::write(path, buf).map_err(|e| CliError::io(path, e))
}

/// Writes a table and its sidecar; returns the data path.
pub fn write_table(ds: &Dataset, table: &Table) -> CliResult<PathBuf> {
    ensure_dir(&ds.config.out)?;
    let path = ds.path();
    match ds.config.format {
        Format::Csv => {
            let rows =
                (0..table.rows()).map(|i| table.columns.iter().map(|c| fmt_f64(c[i])).collect());
            write_csv(&path, &ds.comments(), &table.headers, rows)?;
        }
        Format::Json => write_json(&path, table)?,
    }
    ds.write_sidecar(&path, table.headers.clone())?;
    Ok(path)
}

/// Writes difference frames in long format, one row per grid point.
pub fn write_fields(ds: &Dataset, fields: &[Field2D]) -> CliResult<PathBuf> {
    ensure_dir(&ds.config.out)?;
    let path = ds.path();
    let headers: Vec<String> = ["n1", "n2", "scale", "Omega_t", "s", "k", "value"]
        .map(String::from)
        .to_vec();
    match ds.config.format {
        Format::Csv => {
            let rows = fields.iter().flat_map(|fld| {
                let g = fld.grid;
                let m = fld.meta;
                (0..g.ns).flat_map(move |i| {
                    (0..g.nk).map(move |j| {
                        vec![
                            m.mode.n1.to_string(),
                            m.mode.n2.to_string(),
                            fmt_f64(m.scale),
                            fmt_f64(m.omega_t),
                            fmt_f64(g.s(i)),
                            fmt_f64(g.k(j)),
                            fmt_f64(fld.get(i, j)),
                        ]
                    })
                })
            });
            write_csv(&path, &ds.comments(), &headers, rows)?;
        }
        Format::Json => write_json(&path, fields)?,
    }
    ds.write_sidecar(&path, headers)?;
    Ok(path)
}
