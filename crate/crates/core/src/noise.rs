//! Linearized quantum-noise budget of the seeded twin-beam amplifier.
//!
//! Conventions: vacuum quadrature variance is 1 (shared with the Gaussian
//! simulator in [`crate::gaussian`]); squeezing is the intensity-difference
//! noise relative to the quantum noise limit, quoted linear or in dB
//! (negative dB = below shot noise). The probe sees intensity gain G, the
//! conjugate G−1; losses are beamsplitter transmissions applied per beam.

use thiserror::Error;

use crate::ledger::{Isotope, Ledger, LedgerError, LineId};
use crate::planner::{self, PlannerError};
use crate::vapor::{AbsorptionModel, VaporCell, VaporError};

/// Default intensity transmission of the passive optical path.
pub const DEFAULT_ETA_OPTICS: f64 = 0.98;
/// Default photodiode quantum efficiency.
pub const DEFAULT_ETA_DETECTOR: f64 = 0.95;
/// Squeezing level that bounds the reported squeezing window in a sweep.
/// A strict 0 dB edge is ill-defined for this gain model (the curve stays
/// infinitesimally below 0 dB far from resonance), so the window is the
/// contiguous region around the optimum that clears −0.5 dB.
pub const DEFAULT_WINDOW_THRESHOLD_DB: f64 = -0.5;

const ROOT_TOL_LINEAR: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error("gain must be ≥ 1, got {0}")]
    GainBelowOne(f64),
    #[error("transmission must lie in (0, 1], got {0}")]
    EtaOutOfRange(f64),
    #[error(
        "target {target_db} dB unreachable with this loss budget (minimum achievable {min_achievable_db:.4} dB)"
    )]
    UnreachableTarget {
        target_db: f64,
        min_achievable_db: f64,
    },
    #[error("electronic floor {e} is not below the measured level {s_meas}")]
    OverSubtraction { s_meas: f64, e: f64 },
    #[error("invalid noise input: {0}")]
    InvalidInput(String),
    #[error("invalid gain model parameters: {0}")]
    InvalidGainParams(String),
    #[error("gain undefined: pump sits exactly on a Raman line ({pump_offset_mhz} MHz)")]
    PumpOnResonance { pump_offset_mhz: f64 },
    #[error(transparent)]
    Planner(#[from] PlannerError),
    #[error(transparent)]
    Vapor(#[from] VaporError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

pub fn db_from_linear(s: f64) -> f64 {
    10.0 * s.log10()
}

pub fn linear_from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn check_eta(eta: f64) -> Result<(), NoiseError> {
    if !eta.is_finite() || !(eta > 0.0 && eta <= 1.0) {
        return Err(NoiseError::EtaOutOfRange(eta));
    }
    Ok(())
}

/// Lossless intensity-difference squeezing 1/(2G−1).
pub fn ideal_squeezing(gain: f64) -> Result<f64, NoiseError> {
    if !gain.is_finite() || gain < 1.0 {
        return Err(NoiseError::GainBelowOne(gain));
    }
    Ok(1.0 / (2.0 * gain - 1.0))
}

/// Intensity-difference noise over QNL for probe/conjugate transmissions
/// η_p, η_c:
///
///   S = [(η_p·G − η_c·(G−1))² + (η_p−η_c)²·G·(G−1)
///        + η_p·G·(1−η_p) + η_c·(G−1)·(1−η_c)] / [η_p·G + η_c·(G−1)]
///
/// (validated against the Gaussian covariance simulation to 1e−9).
pub fn squeezing_with_loss(gain: f64, eta_p: f64, eta_c: f64) -> Result<f64, NoiseError> {
    if !gain.is_finite() || gain < 1.0 {
        return Err(NoiseError::GainBelowOne(gain));
    }
    check_eta(eta_p)?;
    check_eta(eta_c)?;
    let g = gain;
    let mean_diff = eta_p * g - eta_c * (g - 1.0);
    let cross = (eta_p - eta_c) * (eta_p - eta_c) * g * (g - 1.0);
    let vac_p = eta_p * g * (1.0 - eta_p);
    let vac_c = eta_c * (g - 1.0) * (1.0 - eta_c);
    let qnl = eta_p * g + eta_c * (g - 1.0);
    Ok((mean_diff * mean_diff + cross + vac_p + vac_c) / qnl)
}

/// Smallest gain whose squeezing matches `target_db` for the given loss
/// budget. Root-found on the closed form; errors if the target lies below
/// the budget's noise floor.
pub fn infer_gain(target_db: f64, eta_p: f64, eta_c: f64) -> Result<f64, NoiseError> {
    check_eta(eta_p)?;
    check_eta(eta_c)?;
    if !target_db.is_finite() {
        return Err(NoiseError::InvalidInput(format!(
            "target_db must be finite, got {target_db}"
        )));
    }
    let target = linear_from_db(target_db);
    let s = |g: f64| squeezing_with_loss(g, eta_p, eta_c).expect("domain pre-checked");

    // S(1) = 1 exactly: coherent beams sit at shot noise whatever the loss.
    if (s(1.0) - target).abs() <= ROOT_TOL_LINEAR {
        return Ok(1.0);
    }

    // Bracket the minimum of the (unimodal) curve by doubling.
    const G_CAP: f64 = 1e12;
    let mut hi = 2.0;
    while hi < G_CAP && s(hi * 2.0) < s(hi) {
        hi *= 2.0;
    }
    let (mut lo_m, mut hi_m) = (1.0, (hi * 2.0).min(G_CAP));
    for _ in 0..200 {
        let m1 = lo_m + (hi_m - lo_m) / 3.0;
        let m2 = hi_m - (hi_m - lo_m) / 3.0;
        if s(m1) <= s(m2) {
            hi_m = m2;
        } else {
            lo_m = m1;
        }
    }
    let g_min = 0.5 * (lo_m + hi_m);
    let s_min = s(g_min);

    let bisect = |mut a: f64, mut b: f64, rising: bool| -> f64 {
        // Invariant: target is crossed between a and b.
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid == a || mid == b {
                break;
            }
            // Falling branch: past-the-root means S < target. Rising: S > target.
            let past = if rising {
                s(mid) > target
            } else {
                s(mid) < target
            };
            if past {
                b = mid;
            } else {
                a = mid;
            }
        }
        0.5 * (a + b)
    };

    if target < 1.0 {
        if target < s_min - ROOT_TOL_LINEAR {
            return Err(NoiseError::UnreachableTarget {
                target_db,
                min_achievable_db: db_from_linear(s_min),
            });
        }
        // Falling branch: smallest G with S = target.
        Ok(bisect(1.0, g_min.max(1.0 + 1e-15), false))
    } else {
        // Targets above shot noise exist only on the rising branch
        // (asymmetric loss); find it past the minimum if there is one.
        let mut b = g_min.max(2.0);
        while s(b) < target && b < G_CAP {
            b *= 2.0;
        }
        if s(b) < target {
            return Err(NoiseError::UnreachableTarget {
                target_db,
                min_achievable_db: db_from_linear(s_min),
            });
        }
        Ok(bisect(g_min, b, true))
    }
}

/// Remove a detector electronic-noise floor `e` (linear, relative to the
/// measured QNL) from a measured noise ratio: (S − e)/(1 − e).
pub fn subtract_electronic_noise(s_meas: f64, e: f64) -> Result<f64, NoiseError> {
    if !s_meas.is_finite() || !e.is_finite() || e < 0.0 {
        return Err(NoiseError::InvalidInput(format!(
            "need finite s_meas and e ≥ 0, got s_meas={s_meas}, e={e}"
        )));
    }
    if s_meas > 1.0 || s_meas <= 0.0 {
        return Err(NoiseError::InvalidInput(format!(
            "measured ratio must lie in (0, 1], got {s_meas}"
        )));
    }
    if e >= s_meas {
        return Err(NoiseError::OverSubtraction { s_meas, e });
    }
    Ok((s_meas - e) / (1.0 - e))
}

/// Electronic floor implied by a (raw, corrected) squeezing pair in dB.
pub fn fit_electronic_floor(raw_db: f64, corrected_db: f64) -> Result<f64, NoiseError> {
    if !(raw_db.is_finite() && corrected_db.is_finite()) || raw_db >= 0.0 {
        return Err(NoiseError::InvalidInput(format!(
            "need finite dB values with raw < 0, got raw={raw_db}, corrected={corrected_db}"
        )));
    }
    if corrected_db >= raw_db {
        return Err(NoiseError::InvalidInput(format!(
            "correction must deepen squeezing: raw={raw_db} dB, corrected={corrected_db} dB"
        )));
    }
    let s_raw = linear_from_db(raw_db);
    let s_corr = linear_from_db(corrected_db);
    Ok((s_raw - s_corr) / (1.0 - s_corr))
}

/// Complete budget for one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseBudget {
    pub gain: f64,
    pub eta_probe: f64,
    pub eta_conjugate: f64,
    pub squeezing_linear: f64,
    pub squeezing_db: f64,
}

impl NoiseBudget {
    pub fn new(gain: f64, eta_probe: f64, eta_conjugate: f64) -> Result<Self, NoiseError> {
        let squeezing_linear = squeezing_with_loss(gain, eta_probe, eta_conjugate)?;
        Ok(Self {
            gain,
            eta_probe,
            eta_conjugate,
            squeezing_linear,
            squeezing_db: db_from_linear(squeezing_linear),
        })
    }
}

/// Phenomenological gain profile G(pump) = 1 + A·κ²·exp(−(δ−δ_LS)²/(2w²)),
/// with κ = 1/λ1 + 1/λ2 the interfering-pathway strength and δ_LS the
/// pump light shift. A and w come from calibration, never first principles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainModelParams {
    pub amplitude: f64,
    pub width_mhz: f64,
    pub pump_power_mw: f64,
}

impl GainModelParams {
    pub fn validate(&self) -> Result<(), NoiseError> {
        if !self.amplitude.is_finite() || self.amplitude < 0.0 {
            return Err(NoiseError::InvalidGainParams(format!(
                "amplitude must be ≥ 0, got {}",
                self.amplitude
            )));
        }
        if !self.width_mhz.is_finite() || self.width_mhz <= 0.0 {
            return Err(NoiseError::InvalidGainParams(format!(
                "width_mhz must be positive, got {}",
                self.width_mhz
            )));
        }
        if !self.pump_power_mw.is_finite() || self.pump_power_mw <= 0.0 {
            return Err(NoiseError::InvalidGainParams(format!(
                "pump_power_mw must be positive, got {}",
                self.pump_power_mw
            )));
        }
        Ok(())
    }
}

/// Gain at one pump offset; `None` when the pump sits exactly on a Raman
/// line (κ diverges, the model does not apply).
pub fn gain_at(
    pump_offset_mhz: f64,
    delta_mhz: f64,
    params: &GainModelParams,
    ledger: &Ledger,
) -> Result<Option<f64>, NoiseError> {
    params.validate()?;
    if !pump_offset_mhz.is_finite() || !delta_mhz.is_finite() {
        return Err(NoiseError::InvalidInput(format!(
            "pump offset and delta must be finite, got {pump_offset_mhz}, {delta_mhz}"
        )));
    }
    let raman = planner::raman_detunings_at(pump_offset_mhz, ledger);
    let (l1, l2) = (raman.lambda1_mhz, raman.lambda2_mhz);
    if l1 == 0.0 || l2 == 0.0 {
        return Ok(None);
    }
    let kappa = 1.0 / l1 + 1.0 / l2;
    let delta_ls = planner::LIGHT_SHIFT_COEFF_MHZ2_PER_MW * params.pump_power_mw / l2.abs();
    let m = delta_mhz - delta_ls;
    let envelope = (-m * m / (2.0 * params.width_mhz * params.width_mhz)).exp();
    Ok(Some(1.0 + params.amplitude * kappa * kappa * envelope))
}

/// Gain across a pump scan; per-point `None` flags pump-on-line samples.
pub fn gain_profile(
    pump_offsets_mhz: &[f64],
    delta_mhz: f64,
    params: &GainModelParams,
    ledger: &Ledger,
) -> Result<Vec<Option<f64>>, NoiseError> {
    pump_offsets_mhz
        .iter()
        .map(|&p| gain_at(p, delta_mhz, params, ledger))
        .collect()
}

/// Inputs for a squeezing-vs-detuning sweep. The scan axis is the probe
/// detuning from `target`; pump and conjugate track it at fixed δ.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub target: LineId,
    pub lo_mhz: f64,
    pub hi_mhz: f64,
    pub step_mhz: f64,
    pub delta_mhz: f64,
    pub cell: VaporCell,
    pub gain: GainModelParams,
    pub eta_optics: f64,
    pub eta_detector: f64,
    pub peak_od: f64,
}

/// Sweep output, one entry per scan point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurve {
    pub detunings_mhz: Vec<f64>,
    pub gain: Vec<f64>,
    pub eta_probe: Vec<f64>,
    pub eta_conjugate: Vec<f64>,
    pub squeezing_db: Vec<f64>,
}

pub fn squeezing_sweep(spec: &SweepSpec, ledger: &Ledger) -> Result<SweepCurve, NoiseError> {
    if spec.target.isotope != Isotope::Rb87 {
        return Err(NoiseError::Planner(PlannerError::TargetNotRb87(
            spec.target,
        )));
    }
    if !(spec.lo_mhz.is_finite() && spec.hi_mhz.is_finite() && spec.step_mhz.is_finite())
        || spec.lo_mhz >= spec.hi_mhz
        || spec.step_mhz <= 0.0
    {
        return Err(NoiseError::InvalidInput(format!(
            "invalid sweep grid lo={}, hi={}, step={}",
            spec.lo_mhz, spec.hi_mhz, spec.step_mhz
        )));
    }
    check_eta(spec.eta_optics)?;
    check_eta(spec.eta_detector)?;
    spec.gain.validate()?;
    let target = ledger.transition_frequency(spec.target)?.mhz();
    let absorption = AbsorptionModel::new(&spec.cell, ledger, spec.peak_od)?;
    let spacing = planner::beat_note_mhz(ledger, spec.delta_mhz) / 2.0;

    let count = ((spec.hi_mhz - spec.lo_mhz) / spec.step_mhz + 1e-9).floor() as usize + 1;
    let mut curve = SweepCurve {
        detunings_mhz: Vec::with_capacity(count),
        gain: Vec::with_capacity(count),
        eta_probe: Vec::with_capacity(count),
        eta_conjugate: Vec::with_capacity(count),
        squeezing_db: Vec::with_capacity(count),
    };
    let eta_fixed = spec.eta_optics * spec.eta_detector;
    for i in 0..count {
        let d = spec.lo_mhz + i as f64 * spec.step_mhz;
        let probe = target + d;
        let pump = probe + spacing;
        let conjugate = probe + 2.0 * spacing;
        let g = gain_at(pump, spec.delta_mhz, &spec.gain, ledger)?.ok_or(
            NoiseError::PumpOnResonance {
                pump_offset_mhz: pump,
            },
        )?;
        let eta_p = absorption.transmission(probe) * eta_fixed;
        let eta_c = absorption.transmission(conjugate) * eta_fixed;
        let s = squeezing_with_loss(g, eta_p, eta_c)?;
        curve.detunings_mhz.push(d);
        curve.gain.push(g);
        curve.eta_probe.push(eta_p);
        curve.eta_conjugate.push(eta_c);
        curve.squeezing_db.push(db_from_linear(s));
    }
    Ok(curve)
}

/// Contiguous squeezing region around the sweep optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingWindow {
    pub lo_mhz: f64,
    pub hi_mhz: f64,
    pub width_mhz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub best_db: f64,
    pub best_detuning_mhz: f64,
    pub threshold_db: f64,
    pub window: Option<SqueezingWindow>,
}

/// Best point of a sweep plus the contiguous sub-threshold window containing
/// it. Window edges are linearly interpolated between grid points; a window
/// reaching the scan edge is truncated there.
pub fn summarize_sweep(curve: &SweepCurve, threshold_db: f64) -> SweepSummary {
    let n = curve.squeezing_db.len();
    assert!(n > 0, "empty sweep");
    let mut best = 0usize;
    for i in 1..n {
        if curve.squeezing_db[i] < curve.squeezing_db[best] {
            best = i;
        }
    }
    let best_db = curve.squeezing_db[best];
    let best_detuning_mhz = curve.detunings_mhz[best];
    let window = if best_db < threshold_db {
        let below = |i: usize| curve.squeezing_db[i] < threshold_db;
        let mut lo_i = best;
        while lo_i > 0 && below(lo_i - 1) {
            lo_i -= 1;
        }
        let mut hi_i = best;
        while hi_i + 1 < n && below(hi_i + 1) {
            hi_i += 1;
        }
        let interp = |inside: usize, outside: usize| -> f64 {
            let (x0, y0) = (curve.detunings_mhz[inside], curve.squeezing_db[inside]);
            let (x1, y1) = (curve.detunings_mhz[outside], curve.squeezing_db[outside]);
            x0 + (threshold_db - y0) / (y1 - y0) * (x1 - x0)
        };
        let lo = if lo_i == 0 {
            curve.detunings_mhz[0]
        } else {
            interp(lo_i, lo_i - 1)
        };
        let hi = if hi_i == n - 1 {
            curve.detunings_mhz[n - 1]
        } else {
            interp(hi_i, hi_i + 1)
        };
        Some(SqueezingWindow {
            lo_mhz: lo,
            hi_mhz: hi,
            width_mhz: hi - lo,
        })
    } else {
        None
    };
    SweepSummary {
        best_db,
        best_detuning_mhz,
        threshold_db,
        window,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::IsotopeMixture;
    use crate::planner::{RAMAN_LINE_1, RAMAN_LINE_2};
    use crate::vapor::DEFAULT_PEAK_OD;

    fn ledger() -> Ledger {
        Ledger::builtin()
    }

    #[test]
    fn ideal_squeezing_reference_points() {
        assert_eq!(ideal_squeezing(1.0).unwrap(), 1.0);
        let s5 = ideal_squeezing(5.0).unwrap();
        assert!((s5 - 1.0 / 9.0).abs() < 1e-15);
        assert!((db_from_linear(s5) - -9.542425094393249).abs() < 1e-9);
        assert!(ideal_squeezing(1e9).unwrap() < 1e-8);
        assert!(matches!(
            ideal_squeezing(0.99),
            Err(NoiseError::GainBelowOne(_))
        ));
    }

    #[test]
    fn ideal_identity() {
        for g in [1.0, 1.5, 2.0, 5.0, 20.0] {
            let s = ideal_squeezing(g).unwrap();
            assert!((s * (2.0 * g - 1.0) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lossless_reduces_to_ideal() {
        for g in [1.0, 1.3, 2.0, 7.5, 20.0] {
            let s = squeezing_with_loss(g, 1.0, 1.0).unwrap();
            assert!((s - ideal_squeezing(g).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn blocked_conjugate_shows_excess_noise() {
        let g = 4.0;
        let s = squeezing_with_loss(g, 1.0, 1e-12).unwrap();
        assert!((s / (2.0 * g - 1.0) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn equal_loss_reduction() {
        for i in 0..10 {
            let g = 1.0 + i as f64 * 2.0;
            for j in 0..10 {
                let eta = 0.05 + 0.095 * j as f64;
                let s = squeezing_with_loss(g, eta, eta).unwrap();
                let reduced = 1.0 - eta + eta / (2.0 * g - 1.0);
                assert!((s - reduced).abs() < 1e-12, "g={g}, eta={eta}");
            }
        }
    }

    #[test]
    fn unit_gain_is_shot_noise_for_any_loss() {
        for (ep, ec) in [(1.0, 1.0), (0.3, 0.9), (0.95, 0.05)] {
            assert_eq!(squeezing_with_loss(1.0, ep, ec).unwrap(), 1.0);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(squeezing_with_loss(0.5, 0.9, 0.9).is_err());
        assert!(squeezing_with_loss(2.0, 0.0, 0.9).is_err());
        assert!(squeezing_with_loss(2.0, 0.9, 1.1).is_err());
    }

    #[test]
    fn infer_gain_known_point() {
        let g = infer_gain(-9.0, 0.95, 0.95).unwrap();
        assert!((g - 6.7588828).abs() < 1e-4, "g = {g}");
        let s = squeezing_with_loss(g, 0.95, 0.95).unwrap();
        assert!((db_from_linear(s) - -9.0).abs() < 1e-9);
    }

    #[test]
    fn infer_gain_zero_db_is_unit_gain() {
        assert_eq!(infer_gain(0.0, 0.8, 0.9).unwrap(), 1.0);
    }

    #[test]
    fn infer_gain_reports_floor_when_unreachable() {
        let err = infer_gain(-15.0, 0.9, 0.9).unwrap_err();
        match err {
            NoiseError::UnreachableTarget {
                min_achievable_db, ..
            } => assert!((min_achievable_db - -10.0).abs() < 0.1),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn infer_gain_finds_rising_branch_for_excess_noise() {
        // Asymmetric loss lets the noise climb above QNL at large gain.
        let g = infer_gain(3.0, 0.95, 0.4).unwrap();
        let s = squeezing_with_loss(g, 0.95, 0.4).unwrap();
        assert!((db_from_linear(s) - 3.0).abs() < 1e-9);
        assert!(g > 1.0);
    }

    #[test]
    fn subtract_zero_floor_is_identity() {
        for s in [0.05, 0.2884, 0.9999] {
            assert_eq!(subtract_electronic_noise(s, 0.0).unwrap(), s);
        }
    }

    #[test]
    fn subtract_monotone_in_floor() {
        let s = 0.3;
        let mut last = f64::INFINITY;
        for i in 0..20 {
            let e = i as f64 * 0.01;
            let corrected = subtract_electronic_noise(s, e).unwrap();
            assert!(corrected < last);
            last = corrected;
        }
    }

    #[test]
    fn subtract_rejects_over_subtraction() {
        assert!(matches!(
            subtract_electronic_noise(0.3, 0.3),
            Err(NoiseError::OverSubtraction { .. })
        ));
        assert!(subtract_electronic_noise(0.3, 0.5).is_err());
    }

    #[test]
    fn electronic_floor_fits_round_trip() {
        for (raw, corrected) in [(-5.4, -6.3), (-5.0, -6.2), (-3.5, -3.9)] {
            let e = fit_electronic_floor(raw, corrected).unwrap();
            assert!(e > 0.0 && e < 1.0);
            let back = subtract_electronic_noise(linear_from_db(raw), e).unwrap();
            assert!((db_from_linear(back) - corrected).abs() < 1e-9);
        }
        // Frozen values for the three pairs.
        assert!((fit_electronic_floor(-5.4, -6.3).unwrap() - 0.070509).abs() < 1e-4);
        assert!((fit_electronic_floor(-5.0, -6.2).unwrap() - 0.100439).abs() < 1e-4);
        assert!((fit_electronic_floor(-3.5, -3.9).unwrap() - 0.066322).abs() < 1e-4);
    }

    fn params() -> GainModelParams {
        GainModelParams {
            amplitude: 7.9e6,
            width_mhz: 34.0,
            pump_power_mw: 1000.0,
        }
    }

    #[test]
    fn gain_is_unity_where_pathways_cancel() {
        let l = ledger();
        let line1 = l.transition_frequency(RAMAN_LINE_1).unwrap().mhz();
        let line2 = l.transition_frequency(RAMAN_LINE_2).unwrap().mhz();
        let midpoint = (line1 + line2) / 2.0;
        let g = gain_at(midpoint, 16.0, &params(), &l).unwrap().unwrap();
        assert_eq!(g, 1.0);
    }

    #[test]
    fn gain_flags_pump_on_line() {
        let l = ledger();
        let line1 = l.transition_frequency(RAMAN_LINE_1).unwrap().mhz();
        assert_eq!(gain_at(line1, 16.0, &params(), &l).unwrap(), None);
    }

    #[test]
    fn gain_never_below_one() {
        let l = ledger();
        let offsets: Vec<f64> = (-40..40).map(|i| 100.0 * i as f64 + 3.7).collect();
        for g in gain_profile(&offsets, 16.0, &params(), &l).unwrap() {
            assert!(g.unwrap() >= 1.0);
        }
    }

    #[test]
    fn sweep_structure_and_far_end() {
        let l = ledger();
        let spec = SweepSpec {
            target: LineId::new(Isotope::Rb87, 2, 2),
            lo_mhz: -400.0,
            hi_mhz: 400.0,
            step_mhz: 5.0,
            delta_mhz: 16.0,
            cell: VaporCell::new(12.0, 89.0, IsotopeMixture::pure_rb85()).unwrap(),
            gain: params(),
            eta_optics: DEFAULT_ETA_OPTICS,
            eta_detector: DEFAULT_ETA_DETECTOR,
            peak_od: DEFAULT_PEAK_OD,
        };
        let curve = squeezing_sweep(&spec, &l).unwrap();
        assert_eq!(curve.detunings_mhz.len(), 161);
        assert!(curve.detunings_mhz.windows(2).all(|w| w[1] > w[0]));
        assert!(curve.gain.iter().all(|&g| g >= 1.0));
        assert!(curve
            .eta_probe
            .iter()
            .chain(&curve.eta_conjugate)
            .all(|&e| e > 0.0 && e <= 1.0));
        // Far red end: little gain, little loss, noise near 0 dB.
        assert!(curve.squeezing_db[0].abs() < 0.6);
    }

    #[test]
    fn summary_interpolates_window_edges() {
        let curve = SweepCurve {
            detunings_mhz: vec![0.0, 1.0, 2.0, 3.0, 4.0],
            gain: vec![1.0; 5],
            eta_probe: vec![1.0; 5],
            eta_conjugate: vec![1.0; 5],
            squeezing_db: vec![0.0, -1.0, -3.0, -1.0, 0.0],
        };
        let summary = summarize_sweep(&curve, -0.5);
        assert_eq!(summary.best_db, -3.0);
        assert_eq!(summary.best_detuning_mhz, 2.0);
        let w = summary.window.unwrap();
        assert!((w.lo_mhz - 0.5).abs() < 1e-12);
        assert!((w.hi_mhz - 3.5).abs() < 1e-12);
        assert!((w.width_mhz - 3.0).abs() < 1e-12);
    }

    #[test]
    fn summary_without_squeezing_has_no_window() {
        let curve = SweepCurve {
            detunings_mhz: vec![0.0, 1.0],
            gain: vec![1.0; 2],
            eta_probe: vec![1.0; 2],
            eta_conjugate: vec![1.0; 2],
            squeezing_db: vec![0.1, 0.2],
        };
        assert!(summarize_sweep(&curve, -0.5).window.is_none());
    }
}
