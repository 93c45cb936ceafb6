//! Four-wave-mixing frequency arithmetic: beam placement, resonance solving,
//! beat notes, Raman detunings, light shifts, and feasibility classification.
//!
//! Sign conventions: red detunings are negative. The two-photon detuning δ
//! enters as probe = pump − (Δ_HF + δ) and conjugate = pump + (Δ_HF + δ),
//! with Δ_HF the ⁸⁵Rb ground-state splitting.
//!
//! The linear identities of a beam triple (2·pump = probe + conjugate,
//! conjugate − probe = beat note) are kept bit-exact in f64 by snapping the
//! derived frequencies onto a fixed 2⁻³⁹ MHz grid (≈2 µHz) before combining
//! them; the snap is ten orders of magnitude below any physical scale here.

use std::fmt;

use thiserror::Error;

use crate::ledger::{Isotope, Ledger, LedgerError, LineId};
use crate::units::{FrequencyOffset, UnitsError};
use crate::vapor::{self, VaporError};

/// Light-shift coefficient, MHz²/mW: shift = c·P/|Δ|. Calibrated so that
/// 500 mW at 4000 MHz detuning gives a 4 MHz shift.
pub const LIGHT_SHIFT_COEFF_MHZ2_PER_MW: f64 = 32.0;

/// Default anchor line for quoting pump detunings.
pub const DEFAULT_ANCHOR: LineId = LineId {
    isotope: Isotope::Rb85,
    fg: 2,
    fe: 2,
};

/// Raman-transition reference lines (shared excited F'=3).
pub const RAMAN_LINE_1: LineId = LineId {
    isotope: Isotope::Rb85,
    fg: 2,
    fe: 3,
};
pub const RAMAN_LINE_2: LineId = LineId {
    isotope: Isotope::Rb85,
    fg: 3,
    fe: 3,
};

/// Pump offsets are limited to ±4.4 GHz from the reference: covers the whole
/// D1 neighborhood of both isotopes while keeping every derived frequency on
/// the exact grid.
pub const PUMP_MAX_ABS_MHZ: f64 = 4400.0;
/// Physical two-photon detunings are tens of MHz; ±500 is generous.
pub const DELTA_MAX_ABS_MHZ: f64 = 500.0;

/// Default feasibility thresholds; see [`FeasibilityThresholds`].
pub const DEFAULT_K_ABS: f64 = 1.0;
pub const DEFAULT_KAPPA_MIN: f64 = 0.39;

const GRID_BEAM: f64 = 549_755_813_888.0; // 2^39 per MHz
const GRID_SPACING: f64 = 1_099_511_627_776.0; // 2^40 per MHz

fn snap(x: f64, grid: f64) -> f64 {
    (x * grid).round() / grid
}

#[derive(Debug, Error)]
pub enum PlannerError {
    #[error("anchor line must belong to Rb85, got {0}")]
    AnchorNotRb85(LineId),
    #[error("resonance target must belong to Rb87, got {0}")]
    TargetNotRb87(LineId),
    #[error("conjugate target ({conj} MHz) must lie above probe target ({probe} MHz)")]
    TargetOrdering { probe: f64, conj: f64 },
    #[error("two-photon detuning {0} MHz outside ±{DELTA_MAX_ABS_MHZ} MHz")]
    DeltaOutOfRange(f64),
    #[error("pump offset {0} MHz outside ±{PUMP_MAX_ABS_MHZ} MHz")]
    PumpOutOfRange(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("light shift undefined at zero detuning")]
    ZeroDetuning,
    #[error("pump power must be positive, got {0} mW")]
    NonPositivePower(f64),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
    #[error(transparent)]
    Units(#[from] UnitsError),
    #[error(transparent)]
    Vapor(#[from] VaporError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamRole {
    Probe,
    Conjugate,
}

impl fmt::Display for BeamRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BeamRole::Probe => write!(f, "probe"),
            BeamRole::Conjugate => write!(f, "conjugate"),
        }
    }
}

/// Full experiment configuration. Angle and beam diameters are recorded
/// metadata; they enter no computation here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FwmConfig {
    /// Line the pump detuning is quoted against; must belong to ⁸⁵Rb.
    pub anchor: LineId,
    /// Signed pump detuning from the anchor, MHz (red = negative).
    pub pump_detuning_mhz: f64,
    /// Two-photon detuning δ, MHz.
    pub delta_mhz: f64,
    pub pump_power_mw: f64,
    pub pump_diameter_mm: f64,
    pub probe_diameter_mm: f64,
    pub angle_deg: f64,
    pub cell_temperature_c: f64,
    pub cell_length_mm: f64,
    /// Photodiode quantum efficiency, in (0, 1].
    pub detection_efficiency: f64,
}

impl FwmConfig {
    pub fn validate(&self, ledger: &Ledger) -> Result<(), PlannerError> {
        if self.anchor.isotope != Isotope::Rb85 {
            return Err(PlannerError::AnchorNotRb85(self.anchor));
        }
        ledger.transition_frequency(self.anchor)?;
        if !self.delta_mhz.is_finite() || self.delta_mhz.abs() > DELTA_MAX_ABS_MHZ {
            return Err(PlannerError::DeltaOutOfRange(self.delta_mhz));
        }
        let pump = self.pump_offset_mhz(ledger)?;
        if !pump.is_finite() || pump.abs() > PUMP_MAX_ABS_MHZ {
            return Err(PlannerError::PumpOutOfRange(pump));
        }
        let positive = [
            ("pump_power_mw", self.pump_power_mw),
            ("pump_diameter_mm", self.pump_diameter_mm),
            ("probe_diameter_mm", self.probe_diameter_mm),
            ("cell_length_mm", self.cell_length_mm),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(PlannerError::InvalidConfig(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        if !self.angle_deg.is_finite() || !(0.0..=90.0).contains(&self.angle_deg) {
            return Err(PlannerError::InvalidConfig(format!(
                "angle_deg must lie in [0, 90], got {}",
                self.angle_deg
            )));
        }
        if !self.cell_temperature_c.is_finite() || !(0.0..=200.0).contains(&self.cell_temperature_c)
        {
            return Err(PlannerError::InvalidConfig(format!(
                "cell_temperature_c must lie in [0, 200], got {}",
                self.cell_temperature_c
            )));
        }
        if !self.detection_efficiency.is_finite()
            || !(self.detection_efficiency > 0.0 && self.detection_efficiency <= 1.0)
        {
            return Err(PlannerError::InvalidConfig(format!(
                "detection_efficiency must lie in (0, 1], got {}",
                self.detection_efficiency
            )));
        }
        Ok(())
    }

    /// Pump frequency relative to the global reference, MHz.
    pub fn pump_offset_mhz(&self, ledger: &Ledger) -> Result<f64, PlannerError> {
        if self.anchor.isotope != Isotope::Rb85 {
            return Err(PlannerError::AnchorNotRb85(self.anchor));
        }
        let anchor = ledger.transition_frequency(self.anchor)?;
        Ok(anchor.mhz() + self.pump_detuning_mhz)
    }
}

/// Pump, probe, conjugate as offsets from the global reference.
///
/// Guaranteed bit-exact: `2·pump == probe + conjugate` and
/// `conjugate − probe == beat_note_mhz(ledger, δ)` for the δ it was built with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamTriple {
    pub pump: FrequencyOffset,
    pub probe: FrequencyOffset,
    pub conjugate: FrequencyOffset,
}

impl BeamTriple {
    /// Probe–conjugate separation, MHz (the measurable beat note).
    pub fn beat_mhz(&self) -> f64 {
        self.conjugate - self.probe
    }

    pub fn beam(&self, role: BeamRole) -> FrequencyOffset {
        match role {
            BeamRole::Probe => self.probe,
            BeamRole::Conjugate => self.conjugate,
        }
    }
}

/// Pump–probe frequency spacing Δ_HF + δ, snapped to the exact grid.
fn pump_probe_spacing_mhz(ledger: &Ledger, delta_mhz: f64) -> f64 {
    snap(
        ledger.ground_splitting_mhz(Isotope::Rb85) + delta_mhz,
        GRID_SPACING,
    )
}

/// Probe–conjugate beat note 2·(Δ_HF + δ), MHz.
pub fn beat_note_mhz(ledger: &Ledger, delta_mhz: f64) -> f64 {
    2.0 * pump_probe_spacing_mhz(ledger, delta_mhz)
}

/// Place the three beams for a configuration.
pub fn beams_from(config: &FwmConfig, ledger: &Ledger) -> Result<BeamTriple, PlannerError> {
    config.validate(ledger)?;
    let pump0 = config.pump_offset_mhz(ledger)?;
    let spacing = pump_probe_spacing_mhz(ledger, config.delta_mhz);
    // probe and beat share the 2^-39 grid, so conjugate = probe + beat and
    // pump = probe + spacing are exact sums; 2·pump == probe + conjugate
    // then holds bitwise.
    let probe = snap(pump0 - spacing, GRID_BEAM);
    let conjugate = probe + 2.0 * spacing;
    let pump = probe + spacing;
    Ok(BeamTriple {
        pump: FrequencyOffset::new(pump)?,
        probe: FrequencyOffset::new(probe)?,
        conjugate: FrequencyOffset::new(conjugate)?,
    })
}

/// Pump detuning (vs `anchor`) that parks `beam` exactly on `target`.
pub fn solve_single_resonance(
    ledger: &Ledger,
    beam: BeamRole,
    target: LineId,
    delta_mhz: f64,
    anchor: LineId,
) -> Result<f64, PlannerError> {
    if target.isotope != Isotope::Rb87 {
        return Err(PlannerError::TargetNotRb87(target));
    }
    if anchor.isotope != Isotope::Rb85 {
        return Err(PlannerError::AnchorNotRb85(anchor));
    }
    if !delta_mhz.is_finite() || delta_mhz.abs() > DELTA_MAX_ABS_MHZ {
        return Err(PlannerError::DeltaOutOfRange(delta_mhz));
    }
    let target_offset = ledger.transition_frequency(target)?.mhz();
    let spacing = pump_probe_spacing_mhz(ledger, delta_mhz);
    let pump = match beam {
        BeamRole::Probe => target_offset + spacing,
        BeamRole::Conjugate => target_offset - spacing,
    };
    Ok(pump - ledger.transition_frequency(anchor)?.mhz())
}

/// Pump detuning and δ that put probe and conjugate on two targets at once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleResonance {
    pub pump_detuning_mhz: f64,
    pub delta_mhz: f64,
}

pub fn solve_double_resonance(
    ledger: &Ledger,
    probe_target: LineId,
    conj_target: LineId,
    anchor: LineId,
) -> Result<DoubleResonance, PlannerError> {
    for target in [probe_target, conj_target] {
        if target.isotope != Isotope::Rb87 {
            return Err(PlannerError::TargetNotRb87(target));
        }
    }
    if anchor.isotope != Isotope::Rb85 {
        return Err(PlannerError::AnchorNotRb85(anchor));
    }
    let probe = ledger.transition_frequency(probe_target)?.mhz();
    let conj = ledger.transition_frequency(conj_target)?.mhz();
    if conj <= probe {
        return Err(PlannerError::TargetOrdering { probe, conj });
    }
    let pump = (probe + conj) / 2.0;
    let delta = (conj - probe) / 2.0 - ledger.ground_splitting_mhz(Isotope::Rb85);
    Ok(DoubleResonance {
        pump_detuning_mhz: pump - ledger.transition_frequency(anchor)?.mhz(),
        delta_mhz: delta,
    })
}

/// Signed pump detunings from the two Raman reference lines.
///
/// `lambda1` is against F2→F'3, `lambda2` against F3→F'3; their difference
/// is the ground splitting (held bit-exact on the internal grid, so
/// `lambda1 − lambda2` is the same f64 for every configuration).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RamanDetunings {
    pub lambda1_mhz: f64,
    pub lambda2_mhz: f64,
}

pub fn raman_detunings(
    config: &FwmConfig,
    ledger: &Ledger,
) -> Result<RamanDetunings, PlannerError> {
    config.validate(ledger)?;
    let pump0 = config.pump_offset_mhz(ledger)?;
    Ok(raman_detunings_at(pump0, ledger))
}

/// Raman detunings for a raw pump offset (no config validation).
pub fn raman_detunings_at(pump_offset_mhz: f64, ledger: &Ledger) -> RamanDetunings {
    let line1 = ledger
        .transition_frequency(RAMAN_LINE_1)
        .expect("Raman reference line")
        .mhz();
    let lambda1 = snap(pump_offset_mhz - line1, GRID_BEAM);
    let split = snap(ledger.ground_splitting_mhz(Isotope::Rb85), GRID_BEAM);
    RamanDetunings {
        lambda1_mhz: lambda1,
        lambda2_mhz: lambda1 + split,
    }
}

/// |1/λ1 + 1/λ2| relative to max(|1/λ1|, |1/λ2|): 0 means the two Raman
/// pathways cancel exactly, 1 means one path dominates outright. Invariant
/// under common rescaling of both detunings.
pub fn raman_interference_ratio(lambda1_mhz: f64, lambda2_mhz: f64) -> f64 {
    let (k1, k2) = (1.0 / lambda1_mhz, 1.0 / lambda2_mhz);
    (k1 + k2).abs() / k1.abs().max(k2.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Ok,
    AbsorptionDominated,
    DestructiveInterference,
}

impl fmt::Display for Feasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Feasibility::Ok => write!(f, "ok"),
            Feasibility::AbsorptionDominated => write!(f, "absorption_dominated"),
            Feasibility::DestructiveInterference => write!(f, "destructive_interference"),
        }
    }
}

/// Tunable feasibility thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityThresholds {
    /// A beam within `k_abs` Doppler half-widths of any ⁸⁵Rb line counts as
    /// absorbed.
    pub k_abs: f64,
    /// Raman interference ratio below which the two pathways cancel. The
    /// default separates the no-gain symmetric configuration (ratio ≈ 0.37)
    /// from the working resonant ones (≥ 0.40).
    pub kappa_min: f64,
}

impl Default for FeasibilityThresholds {
    fn default() -> Self {
        Self {
            k_abs: DEFAULT_K_ABS,
            kappa_min: DEFAULT_KAPPA_MIN,
        }
    }
}

/// Classify whether four-wave mixing is workable at this configuration.
/// Absorption takes precedence over interference.
pub fn classify_feasibility(
    config: &FwmConfig,
    ledger: &Ledger,
    thresholds: &FeasibilityThresholds,
) -> Result<Feasibility, PlannerError> {
    let beams = beams_from(config, ledger)?;
    let hwhm = vapor::doppler_fwhm_mhz(config.cell_temperature_c, Isotope::Rb85, ledger)? / 2.0;
    for beam in [beams.probe, beams.conjugate] {
        for line in ledger.lines(Isotope::Rb85) {
            if (beam.mhz() - line.offset.mhz()).abs() <= thresholds.k_abs * hwhm {
                return Ok(Feasibility::AbsorptionDominated);
            }
        }
    }
    let raman = raman_detunings_at(config.pump_offset_mhz(ledger)?, ledger);
    let (l1, l2) = (raman.lambda1_mhz, raman.lambda2_mhz);
    // A pump exactly on a Raman line is handled by the gain model, not here.
    if l1 != 0.0
        && l2 != 0.0
        && l1 * l2 < 0.0
        && raman_interference_ratio(l1, l2) < thresholds.kappa_min
    {
        return Ok(Feasibility::DestructiveInterference);
    }
    Ok(Feasibility::Ok)
}

/// Pump-induced light shift c·P/|Δ|, MHz.
pub fn light_shift_mhz(power_mw: f64, detuning_mhz: f64) -> Result<f64, PlannerError> {
    if !(power_mw.is_finite() && power_mw > 0.0) {
        return Err(PlannerError::NonPositivePower(power_mw));
    }
    if !detuning_mhz.is_finite() || detuning_mhz == 0.0 {
        return Err(PlannerError::ZeroDetuning);
    }
    Ok(LIGHT_SHIFT_COEFF_MHZ2_PER_MW * power_mw / detuning_mhz.abs())
}

/// The δ that keeps the light-shifted Raman transition on two-photon
/// resonance: the shift from the pump coupling the F3→F' manifold.
pub fn recommended_delta_mhz(config: &FwmConfig, ledger: &Ledger) -> Result<f64, PlannerError> {
    config.validate(ledger)?;
    let pump0 = config.pump_offset_mhz(ledger)?;
    let line2 = ledger.transition_frequency(RAMAN_LINE_2)?.mhz();
    light_shift_mhz(config.pump_power_mw, (pump0 - line2).abs())
}
