//! `ncho`: solve the map, sample trajectories and emit figure datasets.

mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ncho::dynamics::integrate_samples;
use ncho::figures::{
    figure_data, panel_frames, preset_params, FigureKind, FigureSettings, TimeWindow, PRESET_RATIO,
};
use ncho::{
    constraint_residuals, evolve_closed, invariants, sector_energy_direct, setup, Frequencies,
    InitialAmplitudes, NCParams,
};

use config::{Format, Ics, Overrides, Resolved, RunConfig, TimeGrid};
use error::{CliError, CliResult};
use output::{fmt_f64, write_fields, write_json, write_table, Dataset, DerivedFrequencies};

#[derive(Parser)]
#[command(
    name = "ncho",
    version,
    about = "Noncommutative harmonic oscillator datasets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// JSON run configuration
    #[arg(long, value_name = "PATH", global = true)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, value_name = "DIR", global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Ratio λ/μ fixing the gauge of the map
    #[arg(long, value_name = "R", global = true)]
    gauge_ratio: Option<f64>,
    /// Amplification of supplementary frames
    #[arg(long, value_name = "S", global = true)]
    scale: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the map, derived frequencies and constraint residuals
    Solve {
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form trajectory with invariants and sector energies
    Trajectory {
        #[command(flatten)]
        common: Common,
        /// Add RK4 columns and report the largest deviation
        #[arg(long)]
        oracle: bool,
    },
    /// Datasets behind a figure: fig1, fig2, fig3 or figS
    Figure {
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

/// m = ħ = ω = 1 with θ = η = 0.1.
fn demo_params() -> NCParams {
    NCParams::new(1.0, 1.0, 1.0, 0.1, 0.1)
}

fn resolve(
    common: &Common,
    default_params: NCParams,
    default_grid: Option<TimeGrid>,
) -> CliResult<Resolved> {
    let file = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let overrides = Overrides {
        out: common.out.clone(),
        format: common.format,
        gauge_ratio: common.gauge_ratio,
        scale: common.scale,
    };
    Resolved::new(file, overrides, default_params, default_grid)
}

fn initial_amplitudes(cfg: &Resolved, f: &Frequencies) -> InitialAmplitudes {
    match cfg.ics {
        Ics::Canonical { s, k } => InitialAmplitudes::canonical_scaled(f, s, k),
        Ics::Explicit(a) => a,
    }
}

fn cmd_solve(common: &Common) -> CliResult<()> {
    let cfg = resolve(common, demo_params(), None)?;
    let f = setup(&cfg.params, cfg.gauge_ratio)?;
    let report = constraint_residuals(&f.map);
    let summary = json!({
        "params": cfg.params,
        "gauge_ratio": cfg.gauge_ratio,
        "map": { "lambda": f.map.lambda, "mu": f.map.mu },
        "frequencies": DerivedFrequencies::from(&f),
        "residuals": report.residuals,
        "residuals_pass": report.all_pass(),
    });
    if cfg.format == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&summary).expect("plain data")
        );
    } else {
        let p = &cfg.params;
        println!(
            "params      m={} omega={} hbar={} theta={} eta={}",
            p.m, p.omega, p.hbar, p.theta, p.eta
        );
        println!(
            "map         lambda={} mu={} (gauge ratio {})",
            f.map.lambda, f.map.mu, cfg.gauge_ratio
        );
        println!("alpha       {}", f.alpha);
        println!("beta        {}", f.beta);
        println!("gamma       {}", f.gamma);
        println!("Omega       {}", f.carrier);
        println!("gamma/Omega {}", f.ratio());
        for r in &report.residuals {
            let verdict = if r.pass { "ok" } else { "FAIL" };
            println!(
                "residual    {:<24} {:.3e} (tol {:.1e}) {verdict}",
                r.label, r.norm, r.tolerance
            );
        }
    }
    if common.out.is_some() {
        std::fs::create_dir_all(&cfg.out).map_err(|e| CliError::io(&cfg.out, e))?;
        write_json(&cfg.out.join("solve.json"), &summary)?;
        let meta = json!({
            "tool": "ncho",
            "tool_version": output::TOOL_VERSION,
            "dataset": "solve",
            "config": cfg,
            "frequencies": DerivedFrequencies::from(&f),
            "timestamp_unix": std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        });
        write_json(&cfg.out.join("solve.meta.json"), &meta)?;
    }
    if !report.all_pass() {
        return Err(ncho::Error::ConsistencyFailure(format!(
            "map constraints violated: {:?}",
            report.residuals
        ))
        .into());
    }
    Ok(())
}

fn cmd_trajectory(common: &Common, oracle: bool) -> CliResult<()> {
    let cfg = resolve(common, demo_params(), Some(TimeGrid::default()))?;
    let f = setup(&cfg.params, cfg.gauge_ratio)?;
    let ic = initial_amplitudes(&cfg, &f);
    let times: Vec<f64> = cfg
        .time_grid
        .unwrap_or_default()
        .omega_t()
        .iter()
        .map(|wt| wt / f.carrier)
        .collect();
    let states: Vec<_> = times.iter().map(|&t| evolve_closed(&f, &ic, t)).collect();

    let mut table = ncho::figures::Table::new("trajectory");
    let col = |g: &dyn Fn(usize) -> f64| (0..times.len()).map(g).collect::<Vec<f64>>();
    table.push("t", times.clone());
    table.push("Q1", col(&|i| states[i].q1));
    table.push("Q2", col(&|i| states[i].q2));
    table.push("P1", col(&|i| states[i].p1));
    table.push("P2", col(&|i| states[i].p2));
    let inv: Vec<_> = states.iter().map(|s| invariants(&f, s)).collect();
    table.push("I1", col(&|i| inv[i].energy_like));
    table.push("I2", col(&|i| inv[i].action_like));
    let xi: Vec<_> = times
        .iter()
        .map(|&t| sector_energy_direct(&f, &ic, t))
        .collect();
    table.push("xi1", col(&|i| xi[i].xi1));
    table.push("xi2", col(&|i| xi[i].xi2));

    let mut extra = None;
    if oracle {
        let (numeric, warning) = integrate_samples(&f, &ic.to_state(), &times, cfg.oracle_steps);
        if let Some(w) = warning {
            eprintln!("warning: {w}");
        }
        table.push("Q1_rk4", col(&|i| numeric[i].q1));
        table.push("Q2_rk4", col(&|i| numeric[i].q2));
        table.push("P1_rk4", col(&|i| numeric[i].p1));
        table.push("P2_rk4", col(&|i| numeric[i].p2));
        let dev = col(&|i| numeric[i].distance(&states[i]));
        let max_dev = dev.iter().fold(0.0f64, |m, d| m.max(*d));
        table.push("deviation", dev);
        println!(
            "oracle: max deviation {} over {} samples ({} RK4 steps)",
            fmt_f64(max_dev),
            times.len(),
            cfg.oracle_steps
        );
        extra = Some(json!({
            "oracle": {
                "steps": cfg.oracle_steps,
                "max_deviation": max_dev,
                "warning": warning.map(|w| w.to_string()),
            }
        }));
    }

    let ds = Dataset {
        name: "trajectory",
        units: "t in time units (Omega*t spans the configured grid); Q, P canonical; I1 = (alpha/beta)|Q|^2 + (beta/alpha)|P|^2; I2 = Q1 P2 - Q2 P1; xi in energy units",
        config: &cfg,
        frequencies: &f,
        extra,
    };
    let path = write_table(&ds, &table)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_figure(name: &str, common: &Common) -> CliResult<()> {
    let kind: FigureKind = name.parse()?;
    let cfg = resolve(common, preset_params(PRESET_RATIO), None)?;
    let f = setup(&cfg.params, cfg.gauge_ratio)?;
    let mut settings = FigureSettings {
        grid: cfg.grid,
        scale: cfg.scale,
        ..FigureSettings::default()
    };
    if let Some(tg) = cfg.time_grid {
        settings.envelope = TimeWindow::new(tg.t_start, tg.t_end, tg.samples)?;
    }

    let data = match (kind, &cfg.modes) {
        (FigureKind::FigS, Some(modes)) => {
            let panels: Vec<_> = modes.iter().map(|&m| (m, 1e2)).collect();
            ncho::figures::FigureData {
                kind,
                tables: Vec::new(),
                fields: panel_frames(&panels, &f, &settings)?,
            }
        }
        _ => figure_data(kind, &f, &settings)?,
    };

    for table in &data.tables {
        let units = match kind {
            FigureKind::Fig1 => "Omega_t dimensionless; xi and beat in units of hbar*Omega",
            FigureKind::Fig2 => {
                "Omega_t dimensionless; dxi1 and modulation in units of hbar*Omega^2"
            }
            _ => "Omega_t dimensionless; dW_n = hbar dW_n/d(Omega t)",
        };
        let ds = Dataset {
            name: &table.name,
            units,
            config: &cfg,
            frequencies: &f,
            extra: None,
        };
        println!("wrote {}", write_table(&ds, table)?.display());
    }
    if !data.fields.is_empty() {
        let ds = Dataset {
            name: "figS_frames",
            units: "s, k dimensionless; value = scale * pi^2 (hbar W_n1 hbar W_n2 - commutative)",
            config: &cfg,
            frequencies: &f,
            extra: Some(json!({ "frames_per_mode": settings.frames, "grid": settings.grid })),
        };
        println!("wrote {}", write_fields(&ds, &data.fields)?.display());
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Solve { common } => cmd_solve(common),
        Command::Trajectory { common, oracle } => cmd_trajectory(common, *oracle),
        Command::Figure { name, common } => cmd_figure(name, common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
