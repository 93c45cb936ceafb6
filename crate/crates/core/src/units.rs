//! Frequency-offset newtype shared across the crate.
//!
//! Every optical frequency in this crate is stored as a `f64` offset in MHz
//! from the Rb-85 D1 centroid. Optical frequencies themselves are ~3.8e8 MHz;
//! keeping only the offset leaves values of at most a few GHz, where an `f64`
//! carries sub-Hz resolution.

use std::fmt;
use std::ops::Sub;

use thiserror::Error;

/// Largest admissible |offset| in MHz. Everything relevant to the D1 line of
/// either isotope lives within ±10 GHz of the Rb-85 centroid.
pub const MAX_ABS_MHZ: f64 = 10_000.0;

#[derive(Debug, Error, PartialEq)]
pub enum UnitsError {
    #[error("frequency offset must be finite, got {0}")]
    NotFinite(f64),
    #[error("frequency offset {0} MHz outside ±{MAX_ABS_MHZ} MHz")]
    OutOfRange(f64),
}

/// Frequency offset in MHz from the Rb-85 D1 centroid.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FrequencyOffset(f64);

impl FrequencyOffset {
    pub fn new(mhz: f64) -> Result<Self, UnitsError> {
        if !mhz.is_finite() {
            return Err(UnitsError::NotFinite(mhz));
        }
        if mhz.abs() > MAX_ABS_MHZ {
            return Err(UnitsError::OutOfRange(mhz));
        }
        Ok(Self(mhz))
    }

    /// Offset value in MHz.
    pub fn mhz(self) -> f64 {
        self.0
    }

    /// Offset shifted by `delta_mhz`; fails if the result leaves the
    /// admissible band.
    pub fn shifted(self, delta_mhz: f64) -> Result<Self, UnitsError> {
        Self::new(self.0 + delta_mhz)
    }
}

impl Sub for FrequencyOffset {
    type Output = f64;

    /// Difference in MHz.
    fn sub(self, rhs: Self) -> f64 {
        self.0 - rhs.0
    }
}

impl fmt::Display for FrequencyOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} MHz", self.0)
    }
}
