//! Doppler-broadened absorption model of the rubidium vapor cell.
//!
//! Line profiles are pure Gaussians: at 90 °C the Doppler width (~560 MHz)
//! dwarfs the ~6 MHz natural linewidth, so the Voigt profile is Gaussian to
//! better than the fidelity of anything else in this model. The absolute
//! opacity is set by a single calibration constant: the optical depth at the
//! strongest ⁸⁵Rb line center of a pure-⁸⁵Rb reference cell (89 °C, 12 mm)
//! equals `peak_od`; everything else scales with density, length, isotope
//! fraction, and line strength.

use std::f64::consts::PI;

use thiserror::Error;

use crate::ledger::{Isotope, IsotopeMixture, Ledger, LedgerError};

pub const BOLTZMANN_J_PER_K: f64 = 1.380_649e-23;
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;
pub const TORR_TO_PA: f64 = 133.322_368;
/// Rubidium melting point, °C; the vapor-pressure correlation switches from
/// the solid to the liquid branch here.
pub const RB_MELTING_POINT_C: f64 = 39.30;

/// Reference cell used to anchor the opacity scale.
pub const REFERENCE_TEMP_C: f64 = 89.0;
pub const REFERENCE_LENGTH_MM: f64 = 12.0;
/// Default on-resonance optical depth of the reference cell at the strongest
/// line center. The hot cell is deeply opaque on resonance; the default is
/// set so the resonant-probe transmission stays consistent with the
/// squeezing budgets this toolkit is calibrated against.
pub const DEFAULT_PEAK_OD: f64 = 29.0;

const FOUR_LN2: f64 = 4.0 * std::f64::consts::LN_2;

#[derive(Debug, Error)]
pub enum VaporError {
    #[error("temperature {0} °C outside supported range [0, 200] °C")]
    TemperatureOutOfRange(f64),
    #[error("temperature {0} °C is not above absolute zero")]
    NotAboveAbsoluteZero(f64),
    #[error("invalid vapor cell: {0}")]
    InvalidCell(String),
    #[error("peak optical depth must be positive and finite, got {0}")]
    InvalidPeakOd(f64),
    #[error("invalid spectrum grid lo={lo}, hi={hi}, step={step}")]
    InvalidGrid { lo: f64, hi: f64, step: f64 },
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

/// Rb number density from the saturated vapor pressure, m⁻³.
///
/// Vapor pressure in torr from the CRC Handbook correlations
/// (as tabulated in the Steck alkali data compilations), T in kelvin:
///   solid:  log10 P = −94.04826 − 1961.258/T − 0.03771687·T + 42.57526·log10 T
///   liquid: log10 P =  15.88253 − 4529.635/T + 0.00058663·T − 2.99138·log10 T
/// then n = P / (k_B T).
pub fn number_density_per_m3(temperature_c: f64) -> Result<f64, VaporError> {
    if !temperature_c.is_finite() || !(0.0..=200.0).contains(&temperature_c) {
        return Err(VaporError::TemperatureOutOfRange(temperature_c));
    }
    let t = temperature_c + 273.15;
    let log10_p_torr = if temperature_c < RB_MELTING_POINT_C {
        -94.04826 - 1961.258 / t - 0.03771687 * t + 42.57526 * t.log10()
    } else {
        15.88253 - 4529.635 / t + 0.00058663 * t - 2.99138 * t.log10()
    };
    let p_pa = 10f64.powf(log10_p_torr) * TORR_TO_PA;
    Ok(p_pa / (BOLTZMANN_J_PER_K * t))
}

/// Doppler FWHM of the D1 line, MHz: ν₀·√(8·ln2·k_B·T/(m·c²)).
///
/// Valid for any temperature above absolute zero (no vapor-pressure model
/// involved), so scaling laws can be tested outside the cell's range.
pub fn doppler_fwhm_mhz(
    temperature_c: f64,
    isotope: Isotope,
    ledger: &Ledger,
) -> Result<f64, VaporError> {
    if !temperature_c.is_finite() || temperature_c <= -273.15 {
        return Err(VaporError::NotAboveAbsoluteZero(temperature_c));
    }
    let t = temperature_c + 273.15;
    let m = ledger.mass_kg(isotope);
    let nu0 = ledger.d1_frequency_hz();
    let fwhm_hz = nu0
        * (8.0 * std::f64::consts::LN_2 * BOLTZMANN_J_PER_K * t
            / (m * SPEED_OF_LIGHT_M_PER_S * SPEED_OF_LIGHT_M_PER_S))
            .sqrt();
    Ok(fwhm_hz / 1e6)
}

/// The physical cell: length, temperature, isotopic content.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VaporCell {
    pub length_mm: f64,
    pub temperature_c: f64,
    pub mixture: IsotopeMixture,
}

impl VaporCell {
    pub fn new(
        length_mm: f64,
        temperature_c: f64,
        mixture: IsotopeMixture,
    ) -> Result<Self, VaporError> {
        if !(length_mm.is_finite() && length_mm > 0.0) {
            return Err(VaporError::InvalidCell(format!(
                "length must be positive, got {length_mm} mm"
            )));
        }
        if !temperature_c.is_finite() || !(0.0..=200.0).contains(&temperature_c) {
            return Err(VaporError::TemperatureOutOfRange(temperature_c));
        }
        Ok(Self {
            length_mm,
            temperature_c,
            mixture,
        })
    }
}

/// Sampled intensity transmission vs frequency offset.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalResponse {
    /// Strictly increasing, MHz from the global reference.
    pub frequencies_mhz: Vec<f64>,
    /// Same length, each in (0, 1].
    pub transmission: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
struct ProfileLine {
    center_mhz: f64,
    /// Peak optical depth contribution of this line alone.
    peak_od: f64,
    /// 4·ln2 / FWHM², MHz⁻².
    gauss_coeff: f64,
}

/// Beer–Lambert absorption model for one cell, opacity pinned to the
/// reference-cell calibration.
#[derive(Debug, Clone)]
pub struct AbsorptionModel {
    lines: Vec<ProfileLine>,
}

/// Area-normalized Gaussian evaluated at distance 0: peak height 2√(ln2/π)/FWHM.
fn gaussian_peak(fwhm: f64) -> f64 {
    2.0 * (std::f64::consts::LN_2 / PI).sqrt() / fwhm
}

impl AbsorptionModel {
    pub fn new(cell: &VaporCell, ledger: &Ledger, peak_od: f64) -> Result<Self, VaporError> {
        if !(peak_od.is_finite() && peak_od > 0.0) {
            return Err(VaporError::InvalidPeakOd(peak_od));
        }
        // Reference: pure Rb85, 89 °C, 12 mm. The opacity scale makes the
        // summed OD at the strongest reference line center equal peak_od.
        let ref_fwhm = doppler_fwhm_mhz(REFERENCE_TEMP_C, Isotope::Rb85, ledger)?;
        let ref_lines = ledger.line_catalog(&IsotopeMixture::pure_rb85());
        let ref_od_at = |nu: f64| -> f64 {
            ref_lines
                .iter()
                .map(|l| {
                    let d = nu - l.offset.mhz();
                    l.rel_strength
                        * gaussian_peak(ref_fwhm)
                        * (-FOUR_LN2 * d * d / (ref_fwhm * ref_fwhm)).exp()
                })
                .sum()
        };
        let ref_peak = ref_lines
            .iter()
            .map(|l| ref_od_at(l.offset.mhz()))
            .fold(0.0, f64::max);

        let density_ratio =
            number_density_per_m3(cell.temperature_c)? / number_density_per_m3(REFERENCE_TEMP_C)?;
        let scale = peak_od / ref_peak * density_ratio * (cell.length_mm / REFERENCE_LENGTH_MM);

        let mut lines = Vec::new();
        for line in ledger.line_catalog(&cell.mixture) {
            let fwhm = doppler_fwhm_mhz(cell.temperature_c, line.isotope, ledger)?;
            lines.push(ProfileLine {
                center_mhz: line.offset.mhz(),
                peak_od: scale * line.rel_strength * gaussian_peak(fwhm),
                gauss_coeff: FOUR_LN2 / (fwhm * fwhm),
            });
        }
        Ok(Self { lines })
    }

    /// Summed optical depth at a frequency offset, ≥ 0.
    pub fn optical_depth(&self, offset_mhz: f64) -> f64 {
        self.lines
            .iter()
            .map(|l| {
                let d = offset_mhz - l.center_mhz;
                l.peak_od * (-l.gauss_coeff * d * d).exp()
            })
            .sum()
    }

    /// Intensity transmission in (0, 1].
    pub fn transmission(&self, offset_mhz: f64) -> f64 {
        (-self.optical_depth(offset_mhz))
            .exp()
            .max(f64::MIN_POSITIVE)
    }

    /// Transmission sampled on the grid lo, lo+step, …, hi.
    pub fn transmission_spectrum(
        &self,
        lo_mhz: f64,
        hi_mhz: f64,
        step_mhz: f64,
    ) -> Result<OpticalResponse, VaporError> {
        if !(lo_mhz.is_finite() && hi_mhz.is_finite() && step_mhz.is_finite())
            || lo_mhz >= hi_mhz
            || step_mhz <= 0.0
        {
            return Err(VaporError::InvalidGrid {
                lo: lo_mhz,
                hi: hi_mhz,
                step: step_mhz,
            });
        }
        let count = ((hi_mhz - lo_mhz) / step_mhz + 1e-9).floor() as usize + 1;
        let mut frequencies_mhz = Vec::with_capacity(count);
        let mut transmission = Vec::with_capacity(count);
        for i in 0..count {
            let nu = lo_mhz + i as f64 * step_mhz;
            frequencies_mhz.push(nu);
            transmission.push(self.transmission(nu));
        }
        Ok(OpticalResponse {
            frequencies_mhz,
            transmission,
        })
    }
}

/// One saturated-absorption feature: a hyperfine line or a crossover.
#[derive(Debug, Clone, PartialEq)]
pub struct SatAbsMarker {
    pub label: String,
    pub offset_mhz: f64,
}

/// Frequency markers a saturated-absorption reference trace would show:
/// every hyperfine line plus the crossover midpoint of each pair of lines
/// sharing a ground state. Sorted by offset.
pub fn satabs_markers(ledger: &Ledger, mixture: &IsotopeMixture) -> Vec<SatAbsMarker> {
    let mut markers = Vec::new();
    for isotope in [Isotope::Rb85, Isotope::Rb87] {
        if mixture.fraction(isotope) <= 0.0 {
            continue;
        }
        let lines = ledger.lines(isotope);
        for line in &lines {
            markers.push(SatAbsMarker {
                label: format!("{} F{}->F'{}", isotope, line.fg, line.fe),
                offset_mhz: line.offset.mhz(),
            });
        }
        // Crossovers: same Fg, both Fe.
        let fgs: Vec<u32> = {
            let mut v: Vec<u32> = lines.iter().map(|l| l.fg).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        for fg in fgs {
            let pair: Vec<&crate::ledger::TransitionLine> =
                lines.iter().filter(|l| l.fg == fg).collect();
            debug_assert_eq!(pair.len(), 2);
            let (a, b) = (pair[0], pair[1]);
            markers.push(SatAbsMarker {
                label: format!(
                    "{} F{}->CO(F'{},F'{})",
                    isotope,
                    fg,
                    a.fe.min(b.fe),
                    a.fe.max(b.fe)
                ),
                offset_mhz: (a.offset.mhz() + b.offset.mhz()) / 2.0,
            });
        }
    }
    markers.sort_by(|a, b| {
        a.offset_mhz
            .total_cmp(&b.offset_mhz)
            .then_with(|| a.label.cmp(&b.label))
    });
    markers
}
