//! Parallel angular maps.

use rayon::prelude::*;

use crate::channel::{
    harmonic_intensity, BeamParams, ChannelModel, EmissionDirection, Interference, SpectralRecord,
};
use crate::{Result, C64};

use super::grid::ScanGrid;

/// Intensity records over the full (j, theta, phi) lattice, j-major.
///
/// Evaluation order is deterministic regardless of worker count: each grid
/// point computes independently into its slot, with no cross-record
/// reductions.
pub fn angular_map(
    beam: &BeamParams,
    model: &ChannelModel,
    entry: &[C64],
    grid: &ScanGrid,
    interference: Interference,
) -> Result<Vec<SpectralRecord>> {
    let per_j = grid.points_per_harmonic();
    let n_phi = grid.phis().len();
    (0..grid.total_points())
        .into_par_iter()
        .map(|idx| {
            let j = 1 + idx / per_j;
            let it = (idx % per_j) / n_phi;
            let ip = idx % n_phi;
            let theta = grid.thetas()[it];
            let phi = grid.phis()[ip];
            let dir =
                EmissionDirection::new(theta, phi).map_err(|e| e.at_grid_point(j, theta, phi))?;
            harmonic_intensity(beam, model, entry, &dir, j, interference)
                .map_err(|e| e.at_grid_point(j, theta, phi))
        })
        .collect()
}
