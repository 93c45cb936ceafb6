//! `twinbeam` — frequency plans, absorption spectra, squeezing sweeps, noise
//! budgets, and the closed-form-vs-simulator consistency check, emitted as
//! deterministic CSV/text/SVG artifacts.

mod config;
mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use twinbeam::gaussian::{self, GaussianError};
use twinbeam::noise::{self, NoiseError, DEFAULT_WINDOW_THRESHOLD_DB};
use twinbeam::scenario::{self, ScenarioError};
use twinbeam::vapor::{satabs_markers, AbsorptionModel, VaporError};
use twinbeam::{Ledger, OperatingPoint, ScenarioParams};

use config::{ConfigError, RunConfig};
use output::{csv_field, sig12, svg_line_plot, write_atomic, Series};

/// Transmission spectra always cover the full D1 hyperfine span, with margin
/// for the Doppler wings.
const SPECTRUM_LO_MHZ: f64 = -4000.0;
const SPECTRUM_HI_MHZ: f64 = 6000.0;
const SPECTRUM_STEP_MHZ: f64 = 5.0;

#[derive(Parser)]
#[command(
    name = "twinbeam",
    version,
    about = "Planner and report generator for twin-beam four-wave mixing in hot rubidium"
)]
struct Cli {
    /// Run configuration (TOML). Required by every subcommand except
    /// oracle-check.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory, created if missing.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    out: PathBuf,

    /// Artifact selection for plotted data: csv tables, svg plots, or both.
    /// Text reports are always written.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,

    /// Seed for the randomized oracle check.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

impl Format {
    fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    fn svg(self) -> bool {
        matches!(self, Format::Svg | Format::Both)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the beam-frequency plan for the configured scenario.
    Plan,
    /// Doppler-broadened transmission spectrum plus reference markers.
    Spectrum,
    /// Squeezing vs probe detuning over the configured sweep range.
    Sweep,
    /// Gain, efficiency, and squeezing budget at the operating point.
    Noise,
    /// Compare closed-form noise ratios against the Gaussian-state simulator.
    OracleCheck {
        /// Random (gain, loss) draws to compare.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("--config <PATH> is required for this subcommand")]
    MissingConfig,
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    Vapor(#[from] VaporError),
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    fs::create_dir_all(&cli.out).map_err(|source| CliError::Write {
        path: cli.out.display().to_string(),
        source,
    })?;
    let ledger = Ledger::builtin();
    match cli.command {
        Command::Plan => cmd_plan(cli, &load_params(cli, &ledger)?, &ledger)?,
        Command::Spectrum => cmd_spectrum(cli, &load_params(cli, &ledger)?, &ledger)?,
        Command::Sweep => cmd_sweep(cli, &load_params(cli, &ledger)?, &ledger)?,
        Command::Noise => cmd_noise(cli, &load_params(cli, &ledger)?, &ledger)?,
        Command::OracleCheck { trials } => return cmd_oracle_check(cli, trials),
    }
    Ok(ExitCode::SUCCESS)
}

fn load_params(cli: &Cli, ledger: &Ledger) -> Result<ScenarioParams, CliError> {
    let path = cli.config.as_deref().ok_or(CliError::MissingConfig)?;
    Ok(RunConfig::load(path)?.resolve(ledger)?)
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    write_atomic(&path, contents).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// `key  value` line with the keys padded into one column.
fn kv(out: &mut String, key: &str, value: &str) {
    out.push_str(&format!("{key:<28}{value}\n"));
}

fn opt(value: Option<f64>) -> String {
    value.map(sig12).unwrap_or_else(|| "none".to_owned())
}

fn cmd_plan(cli: &Cli, params: &ScenarioParams, ledger: &Ledger) -> Result<(), CliError> {
    let op = scenario::operating_point(params, ledger)?;
    let text = plan_text(params, &op);
    write_out(&cli.out, "plan.txt", &text)?;
    write_out(&cli.out, "plan.csv", &plan_csv(params, &op))?;
    print!("{text}");
    Ok(())
}

fn plan_text(params: &ScenarioParams, op: &OperatingPoint) -> String {
    let mut s = String::new();
    kv(&mut s, "scenario", params.scenario.name());
    kv(&mut s, "pump_offset_mhz", &sig12(op.beams.pump.mhz()));
    kv(&mut s, "probe_offset_mhz", &sig12(op.beams.probe.mhz()));
    kv(
        &mut s,
        "conjugate_offset_mhz",
        &sig12(op.beams.conjugate.mhz()),
    );
    kv(
        &mut s,
        "pump_detuning_mhz",
        &sig12(params.fwm.pump_detuning_mhz),
    );
    kv(&mut s, "delta_mhz", &sig12(params.fwm.delta_mhz));
    kv(&mut s, "beat_note_mhz", &sig12(op.beams.beat_mhz()));
    kv(&mut s, "raman_lambda1_mhz", &sig12(op.raman.lambda1_mhz));
    kv(&mut s, "raman_lambda2_mhz", &sig12(op.raman.lambda2_mhz));
    kv(&mut s, "feasibility", &op.feasibility.to_string());
    kv(
        &mut s,
        "recommended_delta_mhz",
        &opt(op.recommended_delta_mhz),
    );
    s
}

fn plan_csv(params: &ScenarioParams, op: &OperatingPoint) -> String {
    let mut csv = String::from(
        "scenario,pump_offset_mhz,probe_offset_mhz,conjugate_offset_mhz,\
         pump_detuning_mhz,delta_mhz,beat_note_mhz,raman_lambda1_mhz,\
         raman_lambda2_mhz,feasibility,recommended_delta_mhz\n",
    );
    csv.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{}\n",
        params.scenario.name(),
        sig12(op.beams.pump.mhz()),
        sig12(op.beams.probe.mhz()),
        sig12(op.beams.conjugate.mhz()),
        sig12(params.fwm.pump_detuning_mhz),
        sig12(params.fwm.delta_mhz),
        sig12(op.beams.beat_mhz()),
        sig12(op.raman.lambda1_mhz),
        sig12(op.raman.lambda2_mhz),
        op.feasibility,
        op.recommended_delta_mhz.map(sig12).unwrap_or_default(),
    ));
    csv
}

fn cmd_spectrum(cli: &Cli, params: &ScenarioParams, ledger: &Ledger) -> Result<(), CliError> {
    let cell = params.cell()?;
    let model = AbsorptionModel::new(&cell, ledger, params.peak_od)?;
    let spectrum =
        model.transmission_spectrum(SPECTRUM_LO_MHZ, SPECTRUM_HI_MHZ, SPECTRUM_STEP_MHZ)?;

    if cli.format.csv() {
        let mut csv = String::from("offset_mhz,transmission\n");
        for (f, t) in spectrum.frequencies_mhz.iter().zip(&spectrum.transmission) {
            csv.push_str(&format!("{},{}\n", sig12(*f), sig12(*t)));
        }
        write_out(&cli.out, "spectrum.csv", &csv)?;

        let mut markers = String::from("label,offset_mhz\n");
        for marker in satabs_markers(ledger, &params.mixture) {
            markers.push_str(&format!(
                "{},{}\n",
                csv_field(&marker.label),
                sig12(marker.offset_mhz)
            ));
        }
        write_out(&cli.out, "spectrum_markers.csv", &markers)?;
    }
    if cli.format.svg() {
        let svg = svg_line_plot(&Series {
            x: &spectrum.frequencies_mhz,
            y: &spectrum.transmission,
            x_label: "offset_mhz",
            y_label: "transmission",
        });
        write_out(&cli.out, "spectrum.svg", &svg)?;
    }
    println!(
        "spectrum: {} points over [{}, {}] MHz at {} C",
        spectrum.frequencies_mhz.len(),
        sig12(SPECTRUM_LO_MHZ),
        sig12(SPECTRUM_HI_MHZ),
        sig12(params.fwm.cell_temperature_c),
    );
    Ok(())
}

fn cmd_sweep(cli: &Cli, params: &ScenarioParams, ledger: &Ledger) -> Result<(), CliError> {
    let spec = params.sweep_spec(ledger)?;
    let curve = noise::squeezing_sweep(&spec, ledger)?;
    let summary = noise::summarize_sweep(&curve, DEFAULT_WINDOW_THRESHOLD_DB);

    if cli.format.csv() {
        let mut csv =
            String::from("probe_detuning_mhz,gain,eta_probe,eta_conjugate,squeezing_db\n");
        for i in 0..curve.detunings_mhz.len() {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                sig12(curve.detunings_mhz[i]),
                sig12(curve.gain[i]),
                sig12(curve.eta_probe[i]),
                sig12(curve.eta_conjugate[i]),
                sig12(curve.squeezing_db[i]),
            ));
        }
        write_out(&cli.out, "sweep.csv", &csv)?;
    }
    if cli.format.svg() {
        let svg = svg_line_plot(&Series {
            x: &curve.detunings_mhz,
            y: &curve.squeezing_db,
            x_label: "probe_detuning_mhz",
            y_label: "squeezing_db",
        });
        write_out(&cli.out, "sweep.svg", &svg)?;
    }

    let mut text = String::new();
    kv(&mut text, "scenario", params.scenario.name());
    kv(&mut text, "points", &curve.detunings_mhz.len().to_string());
    kv(&mut text, "lo_mhz", &sig12(spec.lo_mhz));
    kv(&mut text, "hi_mhz", &sig12(spec.hi_mhz));
    kv(&mut text, "step_mhz", &sig12(spec.step_mhz));
    kv(&mut text, "best_db", &sig12(summary.best_db));
    kv(
        &mut text,
        "best_detuning_mhz",
        &sig12(summary.best_detuning_mhz),
    );
    kv(&mut text, "threshold_db", &sig12(summary.threshold_db));
    match summary.window {
        Some(w) => {
            kv(&mut text, "window_lo_mhz", &sig12(w.lo_mhz));
            kv(&mut text, "window_hi_mhz", &sig12(w.hi_mhz));
            kv(&mut text, "window_width_mhz", &sig12(w.width_mhz));
        }
        None => kv(&mut text, "window", "none"),
    }
    write_out(&cli.out, "sweep_summary.txt", &text)?;
    print!("{text}");
    Ok(())
}

fn cmd_noise(cli: &Cli, params: &ScenarioParams, ledger: &Ledger) -> Result<(), CliError> {
    let op = scenario::operating_point(params, ledger)?;
    let gain_params = params.resolve_gain(ledger)?;

    let mut text = String::new();
    kv(&mut text, "scenario", params.scenario.name());
    kv(
        &mut text,
        "pump_detuning_mhz",
        &sig12(params.fwm.pump_detuning_mhz),
    );
    kv(&mut text, "delta_mhz", &sig12(params.fwm.delta_mhz));
    kv(&mut text, "pump_power_mw", &sig12(params.fwm.pump_power_mw));
    kv(&mut text, "gain_model_A", &sig12(gain_params.amplitude));
    kv(&mut text, "gain_model_w_mhz", &sig12(gain_params.width_mhz));
    kv(&mut text, "gain", &opt(op.gain));
    match op.budget {
        Some(budget) => {
            kv(&mut text, "eta_probe", &sig12(budget.eta_probe));
            kv(&mut text, "eta_conjugate", &sig12(budget.eta_conjugate));
            kv(
                &mut text,
                "squeezing_linear",
                &sig12(budget.squeezing_linear),
            );
            kv(&mut text, "squeezing_db", &sig12(budget.squeezing_db));
        }
        None => kv(&mut text, "budget", "none (pump on a Raman resonance)"),
    }
    kv(
        &mut text,
        "measured_raw_db",
        &opt(params.scenario.measured_raw_db()),
    );
    kv(
        &mut text,
        "measured_corrected_db",
        &opt(params.scenario.measured_corrected_db()),
    );
    if let (Some(raw), Some(corrected)) = (
        params.scenario.measured_raw_db(),
        params.scenario.measured_corrected_db(),
    ) {
        let floor = noise::fit_electronic_floor(raw, corrected)?;
        kv(&mut text, "electronic_floor_linear", &sig12(floor));
        kv(
            &mut text,
            "electronic_floor_db",
            &sig12(noise::db_from_linear(floor)),
        );
    }
    write_out(&cli.out, "noise_budget.txt", &text)?;
    print!("{text}");
    Ok(())
}

fn cmd_oracle_check(cli: &Cli, trials: u64) -> Result<ExitCode, CliError> {
    let report = gaussian::oracle_equivalence_report(trials, cli.seed)?;
    let mut text = String::new();
    kv(&mut text, "trials", &report.trials.to_string());
    kv(&mut text, "seed", &report.seed.to_string());
    kv(
        &mut text,
        "max_rel_deviation",
        &sig12(report.max_rel_deviation),
    );
    kv(
        &mut text,
        "min_symplectic_eigenvalue",
        &sig12(report.min_symplectic_eigenvalue),
    );
    kv(
        &mut text,
        "result",
        if report.passed { "PASS" } else { "FAIL" },
    );
    write_out(&cli.out, "oracle_check.txt", &text)?;
    print!("{text}");
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
