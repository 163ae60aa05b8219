//! Steady-state optical response of a pumped five-level atom with dressed
//! interacting ground states.
//!
//! The model couples an excited state to two RF-dressed ground doublets and
//! probes one optical transition. Incoherent pumping populates a
//! control-decoupled dressed state, turning a pair of narrow absorption
//! resonances into gain lines with an anomalous-dispersion window between
//! them. This crate provides:
//!
//! - [`params`]: parameter sets, validation, presets, config parsing;
//! - [`liouvillian`]: the exact 25-dimensional steady state and the numeric
//!   probe susceptibility used as the oracle for everything else;
//! - [`dressed`]: doublet rotations, dressed decay, the gain-state
//!   decomposition;
//! - [`analytic`]: closed-form populations, susceptibility, feature
//!   geometry, pump thresholds, and the linear-dispersion coefficient;
//! - [`response`]: spectra, physical units, group index/velocity/delay;
//! - [`doppler`]: Doppler widths and the 2-D Gaussian-broadened
//!   susceptibility;
//! - [`quad`]: the adaptive complex quadrature behind the broadening.

pub mod analytic;
pub mod doppler;
pub mod dressed;
pub mod error;
pub mod liouvillian;
pub mod params;
pub mod quad;
pub mod response;

pub use analytic::{ChiParams, GeneralDetunings, GeneralizedPopulations};
pub use doppler::DopplerSpec;
pub use dressed::MixingAngles;
pub use error::{Error, Result, Warning};
pub use liouvillian::{AffineGenerator, DensityMatrix};
pub use params::{preset, Level, PresetBundle, PumpConfig, SystemParams};
pub use response::{Grid, MediumSpec, Method, ScanConfig, Spectrum};
