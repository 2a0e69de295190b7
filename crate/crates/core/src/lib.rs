//! Photon emission from relativistic positrons channeled between crystal planes.
//!
//! A positron entering a crystal close to a major plane rides a nearly
//! harmonic transverse potential well. Its transverse motion is quantized
//! into oscillator levels; spontaneous drops between levels emit forward
//! beamed photons whose lab frequency is set by the Doppler factor of the
//! longitudinal motion. This crate builds the full first-order emission
//! pipeline:
//!
//! * [`specfun`]: oscillator eigenfunctions, Gauss-Hermite quadrature, and
//!   closed-form transition overlaps, stable to high level index.
//! * [`channel`]: beam kinematics, the harmonic channel model, entry-state
//!   decomposition, spin-summed transition amplitudes, and per-harmonic
//!   angular intensity.
//! * [`scan`]: angular maps over emission direction, binned frequency
//!   spectra, and self-diagnosing convergence reports.
//! * [`oracle`]: slow, independent re-derivations of the core quantities
//!   (quadrature overlaps, explicit spinor sums, discretized Schroedinger
//!   residuals) used to cross-check the fast paths.
//!
//! Everything internal runs in natural units (energies in eV, lengths in
//! 1/eV). The only unit conversion the library performs is the plane
//! spacing, accepted in Angstrom because that is how lattices are tabulated.

pub mod channel;
pub mod oracle;
pub mod scan;
pub mod specfun;

mod error;

pub use error::{Error, Result};

/// Complex double, the amplitude scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Electron mass in eV.
pub const ELECTRON_MASS_EV: f64 = 510_998.95;

/// hbar*c in eV*Angstrom; converts lattice lengths to natural units.
pub const HBARC_EV_ANGSTROM: f64 = 1_973.269_804;

/// Fine-structure constant.
pub const ALPHA_FS: f64 = 1.0 / 137.035_999_084;
