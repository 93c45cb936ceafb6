//! Toolkit for planning and simulating bright twin-beam generation by
//! four-wave mixing in hot rubidium vapor.
//!
//! The crate covers the desk-scale side of such an experiment:
//!
//! - [`ledger`]: Rb-85/Rb-87 D1 hyperfine level and transition catalog, with
//!   every optical frequency expressed as a MHz offset from the Rb-85 D1
//!   centroid.
//! - [`planner`]: four-wave-mixing frequency arithmetic — probe/conjugate
//!   placement, resonance solving, beat notes, Raman detunings, light-shift
//!   compensation, and feasibility classification.
//! - [`vapor`]: Doppler-broadened Beer–Lambert absorption model of the vapor
//!   cell, transmission spectra, and saturated-absorption frequency markers.
//! - [`noise`]: linearized quantum-noise budget of the seeded twin-beam
//!   amplifier — intensity-difference squeezing under asymmetric loss, gain
//!   inference, electronic-noise correction, and squeezing-vs-detuning sweeps.
//! - [`gaussian`]: independent Gaussian-state simulator used to cross-check
//!   the closed-form noise results.
//! - [`scenario`]: preset experiment configurations and the calibration fit
//!   for the phenomenological gain model.
//!
//! All public types are immutable after construction and safe to share across
//! threads; every function here is a pure computation on its inputs.

pub mod gaussian;
pub mod ledger;
pub mod noise;
pub mod planner;
pub mod scenario;
pub mod units;
pub mod vapor;

pub use gaussian::{GaussianState, OracleReport};
pub use ledger::{Isotope, IsotopeMixture, Ledger, LineId, Manifold, TransitionLine};
pub use noise::{GainModelParams, NoiseBudget, SweepCurve, SweepSpec, SweepSummary};
pub use planner::{BeamRole, BeamTriple, Feasibility, FwmConfig, RamanDetunings};
pub use scenario::{OperatingPoint, Scenario, ScenarioParams};
pub use units::FrequencyOffset;
