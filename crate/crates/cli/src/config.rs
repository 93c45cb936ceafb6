//! Run configuration: a TOML file whose keys mirror the documented override
//! surface exactly. Unknown keys are hard errors, reported with the parser's
//! line/column diagnostics.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;
use twinbeam::ledger::LedgerError;
use twinbeam::scenario::ScenarioError;
use twinbeam::{IsotopeMixture, Ledger, Scenario, ScenarioParams};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("config {path}:\n{source}")]
    Parse {
        path: String,
        source: Box<toml::de::Error>,
    },
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Mixture(#[from] LedgerError),
}

/// The whole key surface. Every key is optional; anything omitted falls back
/// to the scenario preset.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    scenario: Option<String>,
    delta_mhz: Option<f64>,
    #[serde(default)]
    pump: Pump,
    #[serde(default)]
    cell: Cell,
    #[serde(default)]
    sweep: Sweep,
    #[serde(default)]
    noise: Noise,
    #[serde(default)]
    gain: Gain,
    #[serde(default)]
    feasibility: Feasibility,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Pump {
    detuning_mhz: Option<f64>,
    power_mw: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Cell {
    temp_c: Option<f64>,
    length_mm: Option<f64>,
    rb85_fraction: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Sweep {
    lo_mhz: Option<f64>,
    hi_mhz: Option<f64>,
    step_mhz: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Noise {
    eta_optics: Option<f64>,
    eta_detector: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Gain {
    #[serde(rename = "A")]
    amplitude: Option<f64>,
    w_mhz: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Feasibility {
    k_abs: Option<f64>,
    kappa_min: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path.display().to_string(),
            source: Box::new(source),
        })
    }

    pub fn scenario(&self) -> Result<Scenario, ScenarioError> {
        match &self.scenario {
            Some(name) => name.parse(),
            None => Ok(Scenario::Custom),
        }
    }

    /// Expand the scenario preset, then lay the file's overrides on top.
    pub fn resolve(&self, ledger: &Ledger) -> Result<ScenarioParams, ConfigError> {
        let mut params = self.scenario()?.expand(ledger)?;
        if let Some(v) = self.pump.detuning_mhz {
            params.fwm.pump_detuning_mhz = v;
        }
        if let Some(v) = self.pump.power_mw {
            params.fwm.pump_power_mw = v;
        }
        if let Some(v) = self.delta_mhz {
            params.fwm.delta_mhz = v;
        }
        if let Some(v) = self.cell.temp_c {
            params.fwm.cell_temperature_c = v;
        }
        if let Some(v) = self.cell.length_mm {
            params.fwm.cell_length_mm = v;
        }
        if let Some(f) = self.cell.rb85_fraction {
            params.mixture = IsotopeMixture::from_rb85_fraction(f)?;
        }
        if let Some(v) = self.sweep.lo_mhz {
            params.sweep_lo_mhz = v;
        }
        if let Some(v) = self.sweep.hi_mhz {
            params.sweep_hi_mhz = v;
        }
        if let Some(v) = self.sweep.step_mhz {
            params.sweep_step_mhz = v;
        }
        if let Some(v) = self.noise.eta_optics {
            params.eta_optics = v;
        }
        if let Some(v) = self.noise.eta_detector {
            params.eta_detector = v;
        }
        if let Some(v) = self.gain.amplitude {
            params.gain_amplitude = Some(v);
        }
        if let Some(v) = self.gain.w_mhz {
            params.gain_width_mhz = Some(v);
        }
        if let Some(v) = self.feasibility.k_abs {
            params.thresholds.k_abs = v;
        }
        if let Some(v) = self.feasibility.kappa_min {
            params.thresholds.kappa_min = v;
        }
        Ok(params)
    }
}
