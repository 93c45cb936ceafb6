//! Rb-85 / Rb-87 D1 hyperfine level and transition catalog.
//!
//! Every optical frequency is a MHz offset from one global reference: the
//! Rb-85 D1 centroid, defined as offset 0. Level offsets within a manifold
//! are degeneracy-weighted (weights 2F+1) so each manifold centroid sits at
//! exactly 0 relative to its own reference.
//!
//! The numeric constants are standard published reference data (Steck,
//! "Rubidium 85/87 D Line Data" compilations); nothing here is fitted. A
//! built-in set is compiled in; an alternative set can be loaded from a TOML
//! file with the same keys.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::units::{FrequencyOffset, UnitsError};

/// ⁸⁵Rb ground-state (5S1/2) hyperfine splitting F=2..F=3, MHz.
/// Source: Steck, Rubidium 85 D Line Data (exact, defined via A_hf).
pub const RB85_GROUND_SPLITTING_MHZ: f64 = 3035.7324390060;
/// ⁸⁵Rb excited-state (5P1/2) hyperfine splitting F'=2..F'=3, MHz (3·A_hf,
/// A_hf = 120.527 MHz).
pub const RB85_EXCITED_SPLITTING_MHZ: f64 = 361.581;
/// ⁸⁷Rb ground-state (5S1/2) hyperfine splitting F=1..F=2, MHz.
pub const RB87_GROUND_SPLITTING_MHZ: f64 = 6834.68261090429;
/// ⁸⁷Rb excited-state (5P1/2) hyperfine splitting F'=1..F'=2, MHz (2·A_hf,
/// A_hf = 407.24 MHz).
pub const RB87_EXCITED_SPLITTING_MHZ: f64 = 814.48;
/// D1 centroid isotope shift ν(⁸⁷Rb) − ν(⁸⁵Rb), MHz.
pub const D1_ISOTOPE_SHIFT_MHZ: f64 = 77.690;
/// Absolute optical frequency of the global reference (⁸⁵Rb D1 centroid), THz.
pub const D1_REFERENCE_THZ: f64 = 377.107_385_690;
/// Atomic masses, unified atomic mass units.
pub const RB85_MASS_U: f64 = 84.911_789_738;
pub const RB87_MASS_U: f64 = 86.909_180_527;
/// Natural isotopic abundances.
pub const NATURAL_RB85_ABUNDANCE: f64 = 0.7217;
pub const NATURAL_RB87_ABUNDANCE: f64 = 0.2783;

/// Unified atomic mass unit, kg (CODATA).
pub const ATOMIC_MASS_KG: f64 = 1.660_539_066_60e-27;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Isotope {
    Rb85,
    Rb87,
}

impl fmt::Display for Isotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isotope::Rb85 => write!(f, "Rb85"),
            Isotope::Rb87 => write!(f, "Rb87"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Manifold {
    Ground,
    ExcitedD1,
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Manifold::Ground => write!(f, "ground"),
            Manifold::ExcitedD1 => write!(f, "excited-D1"),
        }
    }
}

/// Allowed F quantum numbers: two per manifold on D1 for both isotopes
/// (I = 5/2 or 3/2 coupled to J = 1/2), ordered low F first.
pub fn allowed_f(isotope: Isotope, _manifold: Manifold) -> [u32; 2] {
    match isotope {
        Isotope::Rb85 => [2, 3],
        Isotope::Rb87 => [1, 2],
    }
}

/// One hyperfine level; `offset_mhz` is relative to the isotope's manifold
/// centroid, not the global reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperfineLevel {
    pub isotope: Isotope,
    pub manifold: Manifold,
    pub f: u32,
    pub offset_mhz: f64,
}

/// Identifies one D1 transition by its ground and excited F.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LineId {
    pub isotope: Isotope,
    pub fg: u32,
    pub fe: u32,
}

impl LineId {
    pub fn new(isotope: Isotope, fg: u32, fe: u32) -> Self {
        Self { isotope, fg, fe }
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} F{}->F'{}", self.isotope, self.fg, self.fe)
    }
}

/// One D1 transition with its global frequency offset and relative strength
/// (ground-state degeneracy 2Fg+1, optionally scaled by isotope fraction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionLine {
    pub isotope: Isotope,
    pub fg: u32,
    pub fe: u32,
    pub offset: FrequencyOffset,
    pub rel_strength: f64,
}

impl TransitionLine {
    pub fn id(&self) -> LineId {
        LineId::new(self.isotope, self.fg, self.fe)
    }
}

/// Per-isotope number fractions of the vapor. Fractions may sum to less than
/// 1 (inert remainder), never more.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotopeMixture {
    rb85: f64,
    rb87: f64,
}

impl IsotopeMixture {
    pub fn new(rb85: f64, rb87: f64) -> Result<Self, LedgerError> {
        let ok = |x: f64| x.is_finite() && (0.0..=1.0).contains(&x);
        if !ok(rb85) || !ok(rb87) || rb85 + rb87 > 1.0 + 1e-12 {
            return Err(LedgerError::InvalidMixture { rb85, rb87 });
        }
        Ok(Self { rb85, rb87 })
    }

    pub fn pure_rb85() -> Self {
        Self {
            rb85: 1.0,
            rb87: 0.0,
        }
    }

    pub fn natural() -> Self {
        Self {
            rb85: NATURAL_RB85_ABUNDANCE,
            rb87: NATURAL_RB87_ABUNDANCE,
        }
    }

    /// Rb85 fraction `f`, remainder Rb87.
    pub fn from_rb85_fraction(f: f64) -> Result<Self, LedgerError> {
        if !f.is_finite() || !(0.0..=1.0).contains(&f) {
            return Err(LedgerError::InvalidMixture {
                rb85: f,
                rb87: 1.0 - f,
            });
        }
        Self::new(f, 1.0 - f)
    }

    pub fn fraction(&self, isotope: Isotope) -> f64 {
        match isotope {
            Isotope::Rb85 => self.rb85,
            Isotope::Rb87 => self.rb87,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IsotopeConstants {
    pub ground_splitting_mhz: f64,
    pub excited_splitting_mhz: f64,
    pub mass_u: f64,
    pub abundance: f64,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ReferenceConstants {
    /// Absolute frequency of the global zero (⁸⁵Rb D1 centroid), THz.
    pub d1_frequency_thz: f64,
    /// ⁸⁷Rb D1 centroid minus ⁸⁵Rb D1 centroid, MHz.
    pub centroid_diff_mhz: f64,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LedgerConstants {
    pub rb85: IsotopeConstants,
    pub rb87: IsotopeConstants,
    pub reference: ReferenceConstants,
}

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("no level {isotope} {manifold} F={f}")]
    UnknownLevel {
        isotope: Isotope,
        manifold: Manifold,
        f: u32,
    },
    #[error("transition {isotope} F{fg}->F'{fe} violates |ΔF| ≤ 1")]
    SelectionRule { isotope: Isotope, fg: u32, fe: u32 },
    #[error("invalid isotope mixture rb85={rb85}, rb87={rb87}")]
    InvalidMixture { rb85: f64, rb87: f64 },
    #[error("invalid ledger constants: {0}")]
    InvalidConstants(String),
    #[error(transparent)]
    Units(#[from] UnitsError),
    #[error("cannot read constants file: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse constants file: {0}")]
    Parse(#[from] toml::de::Error),
}

/// The level/transition catalog. Immutable once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct Ledger {
    constants: LedgerConstants,
}

impl Ledger {
    /// Compiled-in reference constants; the zero-file default.
    pub fn builtin() -> Self {
        Self {
            constants: LedgerConstants {
                rb85: IsotopeConstants {
                    ground_splitting_mhz: RB85_GROUND_SPLITTING_MHZ,
                    excited_splitting_mhz: RB85_EXCITED_SPLITTING_MHZ,
                    mass_u: RB85_MASS_U,
                    abundance: NATURAL_RB85_ABUNDANCE,
                },
                rb87: IsotopeConstants {
                    ground_splitting_mhz: RB87_GROUND_SPLITTING_MHZ,
                    excited_splitting_mhz: RB87_EXCITED_SPLITTING_MHZ,
                    mass_u: RB87_MASS_U,
                    abundance: NATURAL_RB87_ABUNDANCE,
                },
                reference: ReferenceConstants {
                    d1_frequency_thz: D1_REFERENCE_THZ,
                    centroid_diff_mhz: D1_ISOTOPE_SHIFT_MHZ,
                },
            },
        }
    }

    pub fn from_constants(constants: LedgerConstants) -> Result<Self, LedgerError> {
        let check = |name: &str, iso: &IsotopeConstants| -> Result<(), LedgerError> {
            let bad = |msg: String| Err(LedgerError::InvalidConstants(msg));
            if !(iso.ground_splitting_mhz > 0.0 && iso.ground_splitting_mhz.is_finite()) {
                return bad(format!("{name}.ground_splitting_mhz must be positive"));
            }
            if !(iso.excited_splitting_mhz > 0.0 && iso.excited_splitting_mhz.is_finite()) {
                return bad(format!("{name}.excited_splitting_mhz must be positive"));
            }
            if !(iso.mass_u > 0.0 && iso.mass_u.is_finite()) {
                return bad(format!("{name}.mass_u must be positive"));
            }
            if !iso.abundance.is_finite() || !(0.0..=1.0).contains(&iso.abundance) {
                return bad(format!("{name}.abundance must lie in [0,1]"));
            }
            Ok(())
        };
        check("rb85", &constants.rb85)?;
        check("rb87", &constants.rb87)?;
        if !(constants.reference.d1_frequency_thz > 0.0
            && constants.reference.d1_frequency_thz.is_finite())
        {
            return Err(LedgerError::InvalidConstants(
                "reference.d1_frequency_thz must be positive".into(),
            ));
        }
        if !constants.reference.centroid_diff_mhz.is_finite() {
            return Err(LedgerError::InvalidConstants(
                "reference.centroid_diff_mhz must be finite".into(),
            ));
        }
        Ok(Self { constants })
    }

    pub fn from_toml_str(text: &str) -> Result<Self, LedgerError> {
        Self::from_constants(toml::from_str(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self, LedgerError> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn constants(&self) -> &LedgerConstants {
        &self.constants
    }

    fn isotope_constants(&self, isotope: Isotope) -> &IsotopeConstants {
        match isotope {
            Isotope::Rb85 => &self.constants.rb85,
            Isotope::Rb87 => &self.constants.rb87,
        }
    }

    /// Manifold centroid relative to the global reference, MHz.
    pub fn centroid_mhz(&self, isotope: Isotope) -> f64 {
        match isotope {
            Isotope::Rb85 => 0.0,
            Isotope::Rb87 => self.constants.reference.centroid_diff_mhz,
        }
    }

    pub fn ground_splitting_mhz(&self, isotope: Isotope) -> f64 {
        self.isotope_constants(isotope).ground_splitting_mhz
    }

    pub fn excited_splitting_mhz(&self, isotope: Isotope) -> f64 {
        self.isotope_constants(isotope).excited_splitting_mhz
    }

    pub fn mass_kg(&self, isotope: Isotope) -> f64 {
        self.isotope_constants(isotope).mass_u * ATOMIC_MASS_KG
    }

    pub fn abundance(&self, isotope: Isotope) -> f64 {
        self.isotope_constants(isotope).abundance
    }

    /// Absolute frequency of the global reference, Hz.
    pub fn d1_frequency_hz(&self) -> f64 {
        self.constants.reference.d1_frequency_thz * 1e12
    }

    pub fn natural_mixture(&self) -> IsotopeMixture {
        IsotopeMixture {
            rb85: self.constants.rb85.abundance,
            rb87: self.constants.rb87.abundance,
        }
    }

    /// Level offset relative to the isotope's manifold centroid, MHz.
    /// The two levels are placed at −w_hi·Δ/W and +w_lo·Δ/W (w = 2F+1,
    /// W = w_lo + w_hi), which pins the degeneracy-weighted mean at 0.
    pub fn level_offset_mhz(
        &self,
        isotope: Isotope,
        manifold: Manifold,
        f: u32,
    ) -> Result<f64, LedgerError> {
        let [f_lo, f_hi] = allowed_f(isotope, manifold);
        if f != f_lo && f != f_hi {
            return Err(LedgerError::UnknownLevel {
                isotope,
                manifold,
                f,
            });
        }
        let splitting = match manifold {
            Manifold::Ground => self.ground_splitting_mhz(isotope),
            Manifold::ExcitedD1 => self.excited_splitting_mhz(isotope),
        };
        let (w_lo, w_hi) = ((2 * f_lo + 1) as f64, (2 * f_hi + 1) as f64);
        let total = w_lo + w_hi;
        Ok(if f == f_lo {
            -(w_hi * splitting) / total
        } else {
            (w_lo * splitting) / total
        })
    }

    pub fn level(
        &self,
        isotope: Isotope,
        manifold: Manifold,
        f: u32,
    ) -> Result<HyperfineLevel, LedgerError> {
        Ok(HyperfineLevel {
            isotope,
            manifold,
            f,
            offset_mhz: self.level_offset_mhz(isotope, manifold, f)?,
        })
    }

    /// Global offset of a transition: centroid + excited level − ground
    /// level, evaluated in exactly this order (the construction is the
    /// definition, so the exactness invariant is arithmetic identity).
    pub fn transition_frequency(&self, id: LineId) -> Result<FrequencyOffset, LedgerError> {
        let LineId { isotope, fg, fe } = id;
        let ground = self.level_offset_mhz(isotope, Manifold::Ground, fg)?;
        let excited = self.level_offset_mhz(isotope, Manifold::ExcitedD1, fe)?;
        if fg.abs_diff(fe) > 1 {
            return Err(LedgerError::SelectionRule { isotope, fg, fe });
        }
        Ok(FrequencyOffset::new(
            (self.centroid_mhz(isotope) + excited) - ground,
        )?)
    }

    pub fn line(&self, id: LineId) -> Result<TransitionLine, LedgerError> {
        Ok(TransitionLine {
            isotope: id.isotope,
            fg: id.fg,
            fe: id.fe,
            offset: self.transition_frequency(id)?,
            rel_strength: (2 * id.fg + 1) as f64,
        })
    }

    /// The four D1 lines of one isotope, sorted by offset ascending.
    pub fn lines(&self, isotope: Isotope) -> Vec<TransitionLine> {
        let [f_lo, f_hi] = allowed_f(isotope, Manifold::Ground);
        let mut out = Vec::with_capacity(4);
        for fg in [f_lo, f_hi] {
            for fe in [f_lo, f_hi] {
                out.push(
                    self.line(LineId::new(isotope, fg, fe))
                        .expect("catalog line"),
                );
            }
        }
        out.sort_by(|a, b| a.offset.mhz().total_cmp(&b.offset.mhz()));
        out
    }

    /// All lines of isotopes present in the mixture, strengths scaled by the
    /// isotope fraction, sorted by offset ascending.
    pub fn line_catalog(&self, mixture: &IsotopeMixture) -> Vec<TransitionLine> {
        let mut out = Vec::with_capacity(8);
        for isotope in [Isotope::Rb85, Isotope::Rb87] {
            let fraction = mixture.fraction(isotope);
            if fraction > 0.0 {
                out.extend(self.lines(isotope).into_iter().map(|mut line| {
                    line.rel_strength *= fraction;
                    line
                }));
            }
        }
        out.sort_by(|a, b| a.offset.mhz().total_cmp(&b.offset.mhz()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ledger() -> Ledger {
        Ledger::builtin()
    }

    #[test]
    fn ground_splitting_between_levels() {
        let l = ledger();
        let lo = l
            .level_offset_mhz(Isotope::Rb85, Manifold::Ground, 2)
            .unwrap();
        let hi = l
            .level_offset_mhz(Isotope::Rb85, Manifold::Ground, 3)
            .unwrap();
        assert!((hi - lo - RB85_GROUND_SPLITTING_MHZ).abs() < 1e-9);
    }

    #[test]
    fn manifold_centroids_vanish() {
        let l = ledger();
        for isotope in [Isotope::Rb85, Isotope::Rb87] {
            for manifold in [Manifold::Ground, Manifold::ExcitedD1] {
                let [f_lo, f_hi] = allowed_f(isotope, manifold);
                let mean = (2 * f_lo + 1) as f64
                    * l.level_offset_mhz(isotope, manifold, f_lo).unwrap()
                    + (2 * f_hi + 1) as f64 * l.level_offset_mhz(isotope, manifold, f_hi).unwrap();
                assert!(mean.abs() < 1e-9, "{isotope} {manifold}: {mean}");
            }
        }
    }

    #[test]
    fn higher_f_has_higher_offset() {
        let l = ledger();
        for isotope in [Isotope::Rb85, Isotope::Rb87] {
            for manifold in [Manifold::Ground, Manifold::ExcitedD1] {
                let [f_lo, f_hi] = allowed_f(isotope, manifold);
                assert!(
                    l.level_offset_mhz(isotope, manifold, f_hi).unwrap()
                        > l.level_offset_mhz(isotope, manifold, f_lo).unwrap()
                );
            }
        }
    }

    #[test]
    fn rejects_unknown_level() {
        let err = ledger()
            .level_offset_mhz(Isotope::Rb85, Manifold::Ground, 1)
            .unwrap_err();
        assert!(matches!(err, LedgerError::UnknownLevel { f: 1, .. }));
    }

    #[test]
    fn rb87_ground_f1_matches_weighted_split() {
        // −(5/8)·splitting for the lower of two levels with weights 3 and 5.
        let got = ledger()
            .level_offset_mhz(Isotope::Rb87, Manifold::Ground, 1)
            .unwrap();
        assert!((got - (-(5.0 / 8.0) * RB87_GROUND_SPLITTING_MHZ)).abs() < 1e-9);
        assert!((got - (-4271.6766318152)).abs() < 1e-9);
    }

    #[test]
    fn transition_frequency_is_three_term_sum() {
        let l = ledger();
        for isotope in [Isotope::Rb85, Isotope::Rb87] {
            for line in l.lines(isotope) {
                let ground = l
                    .level_offset_mhz(isotope, Manifold::Ground, line.fg)
                    .unwrap();
                let excited = l
                    .level_offset_mhz(isotope, Manifold::ExcitedD1, line.fe)
                    .unwrap();
                let expected = (l.centroid_mhz(isotope) + excited) - ground;
                // Same arithmetic path: bitwise equality, not a tolerance.
                assert_eq!(line.offset.mhz(), expected);
            }
        }
    }

    #[test]
    fn rb85_lines_at_expected_offsets() {
        let l = ledger();
        let f = |fg, fe| {
            l.transition_frequency(LineId::new(Isotope::Rb85, fg, fe))
                .unwrap()
                .mhz()
        };
        assert!((f(2, 2) - 1559.9216727535).abs() < 1e-9);
        assert!((f(2, 3) - 1921.5026727535).abs() < 1e-9);
        assert!((f(3, 2) - -1475.8107662525).abs() < 1e-9);
        assert!((f(3, 3) - -1114.2297662525).abs() < 1e-9);
    }

    #[test]
    fn rb87_target_separation() {
        let l = ledger();
        let f11 = l
            .transition_frequency(LineId::new(Isotope::Rb87, 1, 1))
            .unwrap();
        let f22 = l
            .transition_frequency(LineId::new(Isotope::Rb87, 2, 2))
            .unwrap();
        assert!((f11 - f22 - 6020.2026109043).abs() < 1e-9);
    }

    #[test]
    fn ground_split_recovered_from_shared_excited_lines() {
        let l = ledger();
        let a = l
            .transition_frequency(LineId::new(Isotope::Rb85, 2, 2))
            .unwrap();
        let b = l
            .transition_frequency(LineId::new(Isotope::Rb85, 3, 2))
            .unwrap();
        assert!((a - b - RB85_GROUND_SPLITTING_MHZ).abs() < 1e-9);
    }

    #[test]
    fn widest_interisotope_line_gap_on_record() {
        // Blue-most line of each isotope: Rb85 F2->F'3 vs Rb87 F1->F'2.
        // The computed gap with reference constants is ~2.733 GHz.
        let l = ledger();
        let rb85 = l
            .transition_frequency(LineId::new(Isotope::Rb85, 2, 3))
            .unwrap();
        let rb87 = l
            .transition_frequency(LineId::new(Isotope::Rb87, 1, 2))
            .unwrap();
        assert!((rb87 - rb85 - 2733.2939590617).abs() < 1e-6);
    }

    #[test]
    fn catalog_counts_and_order() {
        let l = ledger();
        assert_eq!(l.line_catalog(&IsotopeMixture::pure_rb85()).len(), 4);
        let natural = l.line_catalog(&IsotopeMixture::natural());
        assert_eq!(natural.len(), 8);
        assert!(natural
            .windows(2)
            .all(|w| w[0].offset.mhz() < w[1].offset.mhz()));
        // Reddest line of the natural mixture is Rb87 F2->F'1.
        let first = &natural[0];
        assert_eq!((first.isotope, first.fg, first.fe), (Isotope::Rb87, 2, 1));
    }

    #[test]
    fn catalog_scales_strengths_by_fraction() {
        let l = ledger();
        let natural = l.line_catalog(&IsotopeMixture::natural());
        let rb85_strengths: Vec<f64> = natural
            .iter()
            .filter(|t| t.isotope == Isotope::Rb85)
            .map(|t| t.rel_strength)
            .collect();
        for s in rb85_strengths {
            assert!(
                (s - 5.0 * NATURAL_RB85_ABUNDANCE).abs() < 1e-12
                    || (s - 7.0 * NATURAL_RB85_ABUNDANCE).abs() < 1e-12
            );
        }
    }

    #[test]
    fn mixture_validation() {
        assert!(IsotopeMixture::new(0.7, 0.4).is_err());
        assert!(IsotopeMixture::new(-0.1, 0.5).is_err());
        assert!(IsotopeMixture::new(f64::NAN, 0.0).is_err());
        assert!(IsotopeMixture::new(0.5, 0.25).is_ok());
        assert_eq!(
            IsotopeMixture::from_rb85_fraction(1.0).unwrap(),
            IsotopeMixture::pure_rb85()
        );
    }

    #[test]
    fn toml_round_trip_matches_builtin() {
        let text = r#"
            [rb85]
            ground_splitting_mhz = 3035.7324390060
            excited_splitting_mhz = 361.581
            mass_u = 84.911789738
            abundance = 0.7217

            [rb87]
            ground_splitting_mhz = 6834.68261090429
            excited_splitting_mhz = 814.48
            mass_u = 86.909180527
            abundance = 0.2783

            [reference]
            d1_frequency_thz = 377.107385690
            centroid_diff_mhz = 77.690
        "#;
        let loaded = Ledger::from_toml_str(text).unwrap();
        assert_eq!(loaded, Ledger::builtin());
    }

    #[test]
    fn toml_rejects_unknown_keys_and_bad_values() {
        let unknown = r#"
            [rb85]
            ground_splitting_mhz = 3035.0
            excited_splitting_mhz = 361.0
            mass_u = 84.9
            abundance = 0.72
            d2_splitting_mhz = 1.0

            [rb87]
            ground_splitting_mhz = 6834.0
            excited_splitting_mhz = 814.0
            mass_u = 86.9
            abundance = 0.28

            [reference]
            d1_frequency_thz = 377.1
            centroid_diff_mhz = 77.7
        "#;
        assert!(matches!(
            Ledger::from_toml_str(unknown),
            Err(LedgerError::Parse(_))
        ));

        let negative = unknown.replace("d2_splitting_mhz = 1.0", "").replace(
            "ground_splitting_mhz = 3035.0",
            "ground_splitting_mhz = -3035.0",
        );
        assert!(matches!(
            Ledger::from_toml_str(&negative),
            Err(LedgerError::InvalidConstants(_))
        ));
    }
}
