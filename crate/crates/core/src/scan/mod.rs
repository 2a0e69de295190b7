//! Angular maps, binned spectra, and convergence diagnostics.

mod convergence;
mod grid;
mod map;
mod spectrum;

pub use convergence::{convergence_report, ConvergenceEntry, ConvergenceReport};
pub use grid::ScanGrid;
pub use map::angular_map;
pub use spectrum::{frequency_spectrum, Spectrum, SpectrumBin, SpectrumSet};
