//! Published operating points of the source, expanded into complete
//! configurations, and the calibration tying the gain model to measured
//! squeezing levels.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ledger::{Isotope, IsotopeMixture, Ledger, LedgerError, LineId};
use crate::noise::{
    self, GainModelParams, NoiseBudget, NoiseError, SweepSpec, DEFAULT_ETA_DETECTOR,
    DEFAULT_ETA_OPTICS,
};
use crate::planner::{
    self, BeamRole, BeamTriple, Feasibility, FeasibilityThresholds, FwmConfig, PlannerError,
    RamanDetunings, DEFAULT_ANCHOR,
};
use crate::vapor::{AbsorptionModel, VaporCell, VaporError, DEFAULT_PEAK_OD};

/// Measured intensity-difference squeezing at each named operating point,
/// dB relative to QNL, as published.
pub const MEASURED_RAW_DB_OFF_RESONANCE: f64 = -9.0;
pub const MEASURED_RAW_DB_PROBE_RESONANT: f64 = -5.4;
pub const MEASURED_RAW_DB_CONJUGATE_RESONANT: f64 = -5.0;
pub const MEASURED_RAW_DB_DOUBLE_RESONANT: f64 = -3.5;
/// Same points after electronic-noise subtraction (no published value for
/// the off-resonance point).
pub const MEASURED_CORRECTED_DB_PROBE_RESONANT: f64 = -6.3;
pub const MEASURED_CORRECTED_DB_CONJUGATE_RESONANT: f64 = -6.2;
pub const MEASURED_CORRECTED_DB_DOUBLE_RESONANT: f64 = -3.9;

/// Off-resonance configuration: the conjugate runs this far blue of the
/// ⁸⁵Rb F=2→F'=3 line.
const OFF_RESONANCE_CONJ_BLUE_MHZ: f64 = 3800.0;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario '{0}' (expected off_resonance, probe_resonant, conjugate_resonant, double_resonant or custom)")]
    UnknownScenario(String),
    #[error("gain calibration failed: {0}")]
    CalibrationFailed(String),
    #[error(transparent)]
    Planner(#[from] PlannerError),
    #[error(transparent)]
    Vapor(#[from] VaporError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

/// Named operating points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// Far-detuned workhorse configuration; neither twin beam resonant.
    OffResonance,
    /// Probe parked on the ⁸⁷Rb F=2→F'=2 line.
    ProbeResonant,
    /// Conjugate parked on the ⁸⁷Rb F=1→F'=1 line.
    ConjugateResonant,
    /// Probe and conjugate resonant simultaneously.
    DoubleResonant,
    /// Caller-specified pump detuning and δ.
    Custom,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::OffResonance,
        Scenario::ProbeResonant,
        Scenario::ConjugateResonant,
        Scenario::DoubleResonant,
        Scenario::Custom,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::OffResonance => "off_resonance",
            Scenario::ProbeResonant => "probe_resonant",
            Scenario::ConjugateResonant => "conjugate_resonant",
            Scenario::DoubleResonant => "double_resonant",
            Scenario::Custom => "custom",
        }
    }

    /// Published squeezing at this point, if any.
    pub fn measured_raw_db(&self) -> Option<f64> {
        match self {
            Scenario::OffResonance => Some(MEASURED_RAW_DB_OFF_RESONANCE),
            Scenario::ProbeResonant => Some(MEASURED_RAW_DB_PROBE_RESONANT),
            Scenario::ConjugateResonant => Some(MEASURED_RAW_DB_CONJUGATE_RESONANT),
            Scenario::DoubleResonant => Some(MEASURED_RAW_DB_DOUBLE_RESONANT),
            Scenario::Custom => None,
        }
    }

    /// Published electronically-corrected squeezing, if any.
    pub fn measured_corrected_db(&self) -> Option<f64> {
        match self {
            Scenario::ProbeResonant => Some(MEASURED_CORRECTED_DB_PROBE_RESONANT),
            Scenario::ConjugateResonant => Some(MEASURED_CORRECTED_DB_CONJUGATE_RESONANT),
            Scenario::DoubleResonant => Some(MEASURED_CORRECTED_DB_DOUBLE_RESONANT),
            Scenario::OffResonance | Scenario::Custom => None,
        }
    }

    /// Expand to the full parameter set. Detunings of the resonant presets
    /// are solved from the line ledger at expansion time.
    pub fn expand(&self, ledger: &Ledger) -> Result<ScenarioParams, ScenarioError> {
        let probe_line = LineId::new(Isotope::Rb87, 2, 2);
        let conj_line = LineId::new(Isotope::Rb87, 1, 1);
        let (pump_detuning_mhz, delta_mhz) = match self {
            Scenario::OffResonance => {
                let conj_target = ledger.transition_frequency(planner::RAMAN_LINE_1)?.mhz()
                    + OFF_RESONANCE_CONJ_BLUE_MHZ;
                let spacing = planner::beat_note_mhz(ledger, 4.0) / 2.0;
                let anchor = ledger.transition_frequency(DEFAULT_ANCHOR)?.mhz();
                (conj_target - spacing - anchor, 4.0)
            }
            Scenario::ProbeResonant => (
                planner::solve_single_resonance(
                    ledger,
                    BeamRole::Probe,
                    probe_line,
                    16.0,
                    DEFAULT_ANCHOR,
                )?,
                16.0,
            ),
            Scenario::ConjugateResonant => (
                planner::solve_single_resonance(
                    ledger,
                    BeamRole::Conjugate,
                    conj_line,
                    16.0,
                    DEFAULT_ANCHOR,
                )?,
                16.0,
            ),
            Scenario::DoubleResonant => {
                let solved =
                    planner::solve_double_resonance(ledger, probe_line, conj_line, DEFAULT_ANCHOR)?;
                (solved.pump_detuning_mhz, solved.delta_mhz)
            }
            Scenario::Custom => (0.0, 0.0),
        };
        // Geometry and power: wide beams at 1 W for the resonant points,
        // the narrower 400 mW arrangement otherwise.
        let (pump_power_mw, pump_diameter_mm, probe_diameter_mm, angle_deg) = match self {
            Scenario::ProbeResonant | Scenario::ConjugateResonant => (1000.0, 1.9, 0.6, 0.45),
            Scenario::DoubleResonant => (1000.0, 1.9, 0.6, 0.5),
            Scenario::OffResonance | Scenario::Custom => (400.0, 1.3, 0.7, 0.3),
        };
        let cell_temperature_c = match self {
            Scenario::DoubleResonant => 91.0,
            _ => 89.0,
        };
        Ok(ScenarioParams {
            scenario: *self,
            fwm: FwmConfig {
                anchor: DEFAULT_ANCHOR,
                pump_detuning_mhz,
                delta_mhz,
                pump_power_mw,
                pump_diameter_mm,
                probe_diameter_mm,
                angle_deg,
                cell_temperature_c,
                cell_length_mm: 12.0,
                detection_efficiency: DEFAULT_ETA_DETECTOR,
            },
            mixture: IsotopeMixture::pure_rb85(),
            sweep_lo_mhz: -400.0,
            sweep_hi_mhz: 400.0,
            sweep_step_mhz: 5.0,
            sweep_target: probe_line,
            eta_optics: DEFAULT_ETA_OPTICS,
            eta_detector: DEFAULT_ETA_DETECTOR,
            peak_od: DEFAULT_PEAK_OD,
            thresholds: FeasibilityThresholds::default(),
            gain_amplitude: None,
            gain_width_mhz: None,
        })
    }
}

impl FromStr for Scenario {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|scenario| scenario.name() == s)
            .ok_or_else(|| ScenarioError::UnknownScenario(s.to_string()))
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fully expanded configuration: everything needed to plan, sweep and
/// budget one operating point. `gain_amplitude`/`gain_width_mhz` of `None`
/// mean "use the calibrated values".
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioParams {
    pub scenario: Scenario,
    pub fwm: FwmConfig,
    pub mixture: IsotopeMixture,
    pub sweep_lo_mhz: f64,
    pub sweep_hi_mhz: f64,
    pub sweep_step_mhz: f64,
    pub sweep_target: LineId,
    pub eta_optics: f64,
    pub eta_detector: f64,
    pub peak_od: f64,
    pub thresholds: FeasibilityThresholds,
    pub gain_amplitude: Option<f64>,
    pub gain_width_mhz: Option<f64>,
}

impl ScenarioParams {
    pub fn cell(&self) -> Result<VaporCell, VaporError> {
        VaporCell::new(
            self.fwm.cell_length_mm,
            self.fwm.cell_temperature_c,
            self.mixture,
        )
    }

    /// End-to-end transmissions (vapor × optics × detector) for the planned
    /// probe and conjugate.
    pub fn eta_budget(&self, ledger: &Ledger) -> Result<(f64, f64), ScenarioError> {
        let beams = planner::beams_from(&self.fwm, ledger)?;
        let model = AbsorptionModel::new(&self.cell()?, ledger, self.peak_od)?;
        let fixed = self.eta_optics * self.eta_detector;
        Ok((
            model.transmission(beams.probe.mhz()) * fixed,
            model.transmission(beams.conjugate.mhz()) * fixed,
        ))
    }

    /// Gain-model parameters: explicit overrides if both given, otherwise
    /// the calibrated amplitude/width, always at this point's pump power.
    pub fn resolve_gain(&self, ledger: &Ledger) -> Result<GainModelParams, ScenarioError> {
        let (amplitude, width_mhz) = match (self.gain_amplitude, self.gain_width_mhz) {
            (Some(a), Some(w)) => (a, w),
            (a, w) => {
                let calibration = calibrated_gain_params(ledger)?;
                (
                    a.unwrap_or(calibration.amplitude),
                    w.unwrap_or(calibration.width_mhz),
                )
            }
        };
        Ok(GainModelParams {
            amplitude,
            width_mhz,
            pump_power_mw: self.fwm.pump_power_mw,
        })
    }

    pub fn sweep_spec(&self, ledger: &Ledger) -> Result<SweepSpec, ScenarioError> {
        Ok(SweepSpec {
            target: self.sweep_target,
            lo_mhz: self.sweep_lo_mhz,
            hi_mhz: self.sweep_hi_mhz,
            step_mhz: self.sweep_step_mhz,
            delta_mhz: self.fwm.delta_mhz,
            cell: self.cell()?,
            gain: self.resolve_gain(ledger)?,
            eta_optics: self.eta_optics,
            eta_detector: self.eta_detector,
            peak_od: self.peak_od,
        })
    }
}

/// Gain-model amplitude and width pinned by two measured squeezing levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainCalibration {
    pub amplitude: f64,
    pub width_mhz: f64,
    /// Gain the probe-resonant loss budget needs for −5.4 dB.
    pub gain_single_resonant: f64,
    /// Gain the doubly-resonant budget needs for −3.5 dB.
    pub gain_double_resonant: f64,
}

fn kappa_and_mismatch(
    params: &ScenarioParams,
    ledger: &Ledger,
) -> Result<(f64, f64), ScenarioError> {
    let pump = params.fwm.pump_offset_mhz(ledger)?;
    let raman = planner::raman_detunings_at(pump, ledger);
    let kappa = 1.0 / raman.lambda1_mhz + 1.0 / raman.lambda2_mhz;
    let shift =
        planner::LIGHT_SHIFT_COEFF_MHZ2_PER_MW * params.fwm.pump_power_mw / raman.lambda2_mhz.abs();
    Ok((kappa, params.fwm.delta_mhz - shift))
}

/// Fit (A, w) of the gain model from the probe-resonant and doubly-resonant
/// measurements. Two points with different pathway strengths κ and
/// light-shift mismatches m pin both parameters:
///
///   G−1 = A·κ²·exp(−m²/2w²)  at each point.
///
/// The conjugate-resonant level is then a prediction, not an input.
pub fn calibrated_gain_params(ledger: &Ledger) -> Result<GainCalibration, ScenarioError> {
    let single = Scenario::ProbeResonant.expand(ledger)?;
    let double = Scenario::DoubleResonant.expand(ledger)?;
    let (eta_p_s, eta_c_s) = single.eta_budget(ledger)?;
    let (eta_p_d, eta_c_d) = double.eta_budget(ledger)?;
    let gain_single = noise::infer_gain(MEASURED_RAW_DB_PROBE_RESONANT, eta_p_s, eta_c_s)?;
    let gain_double = noise::infer_gain(MEASURED_RAW_DB_DOUBLE_RESONANT, eta_p_d, eta_c_d)?;
    let (kappa_s, m_s) = kappa_and_mismatch(&single, ledger)?;
    let (kappa_d, m_d) = kappa_and_mismatch(&double, ledger)?;
    let ratio =
        (kappa_d * kappa_d * (gain_single - 1.0)) / (kappa_s * kappa_s * (gain_double - 1.0));
    // A real width needs the farther-detuned point to demand the weaker
    // normalized gain; NaN ratios fail here too.
    let bracketed = ratio.is_finite() && ratio > 1.0 && m_d * m_d > m_s * m_s;
    if !bracketed {
        return Err(ScenarioError::CalibrationFailed(format!(
            "calibration points do not bracket a width: ratio {ratio}, mismatches {m_s} / {m_d} MHz"
        )));
    }
    let w2 = (m_d * m_d - m_s * m_s) / (2.0 * ratio.ln());
    let amplitude = (gain_single - 1.0) / (kappa_s * kappa_s * (-m_s * m_s / (2.0 * w2)).exp());
    Ok(GainCalibration {
        amplitude,
        width_mhz: w2.sqrt(),
        gain_single_resonant: gain_single,
        gain_double_resonant: gain_double,
    })
}

/// Planner + gain + noise rollup for one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatingPoint {
    pub beams: BeamTriple,
    pub raman: RamanDetunings,
    pub feasibility: Feasibility,
    /// δ compensating the pump light shift; `None` when the pump sits on
    /// the reference line.
    pub recommended_delta_mhz: Option<f64>,
    /// `None` when the pump sits exactly on a Raman line.
    pub gain: Option<f64>,
    pub budget: Option<NoiseBudget>,
}

pub fn operating_point(
    params: &ScenarioParams,
    ledger: &Ledger,
) -> Result<OperatingPoint, ScenarioError> {
    params.fwm.validate(ledger)?;
    let beams = planner::beams_from(&params.fwm, ledger)?;
    let raman = planner::raman_detunings(&params.fwm, ledger)?;
    let feasibility = planner::classify_feasibility(&params.fwm, ledger, &params.thresholds)?;
    let recommended_delta_mhz = planner::recommended_delta_mhz(&params.fwm, ledger).ok();
    let gain_params = params.resolve_gain(ledger)?;
    let gain = noise::gain_at(beams.pump.mhz(), params.fwm.delta_mhz, &gain_params, ledger)?;
    let budget = match gain {
        Some(g) => {
            let (eta_p, eta_c) = params.eta_budget(ledger)?;
            Some(NoiseBudget::new(g, eta_p, eta_c)?)
        }
        None => None,
    };
    Ok(OperatingPoint {
        beams,
        raman,
        feasibility,
        recommended_delta_mhz,
        gain,
        budget,
    })
}
