//! Scan grids over emission angles and harmonics.

use crate::channel::BeamParams;
use crate::{Error, Result};

/// The (j, theta, phi) lattice an angular map runs over, plus the
/// frequency binning a spectrum derives from it.
///
/// theta is a closed grid (trapezoid quadrature weights); phi is uniform
/// on [0, 2pi) with the endpoint identified (periodic rectangle weights,
/// spectrally accurate for the smooth azimuthal dependence). Records run
/// j-major, then theta, then phi.
#[derive(Debug, Clone)]
pub struct ScanGrid {
    thetas: Vec<f64>,
    phis: Vec<f64>,
    j_max: usize,
    omega_bins: usize,
    omega_max: f64,
}

/// Headroom of the frequency axis above the highest forward line.
const OMEGA_HEADROOM: f64 = 1.05;

impl ScanGrid {
    /// Default grid for a beam and level spacing: theta covers the forward
    /// cone [0, 5/gamma] with `theta_points` nodes, phi the full azimuth.
    pub fn forward_cone(
        beam: &BeamParams,
        omega_level: f64,
        j_max: usize,
        theta_points: usize,
        phi_points: usize,
        omega_bins: usize,
    ) -> Result<Self> {
        if theta_points < 2 {
            return Err(Error::invalid("theta_points", "need at least 2 nodes"));
        }
        if phi_points == 0 {
            return Err(Error::invalid("phi_points", "need at least 1 node"));
        }
        let g = beam.gamma();
        let theta_max = 5.0 / g;
        let thetas = (0..theta_points)
            .map(|i| theta_max * i as f64 / (theta_points - 1) as f64)
            .collect();
        let phis = (0..phi_points)
            .map(|i| 2.0 * std::f64::consts::PI * i as f64 / phi_points as f64)
            .collect();
        let omega_max = OMEGA_HEADROOM * 2.0 * g * g * omega_level * j_max as f64;
        Self::new(thetas, phis, j_max, omega_bins, omega_max)
    }

    /// Grid from explicit angle lists. `omega_max` caps the spectrum axis
    /// and must not exceed the headroom above the highest forward line
    /// (checked later against the records; here only for positivity).
    // The negated comparisons below also reject NaN axis values.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(
        thetas: Vec<f64>,
        phis: Vec<f64>,
        j_max: usize,
        omega_bins: usize,
        omega_max: f64,
    ) -> Result<Self> {
        if j_max == 0 {
            return Err(Error::invalid("j_max", "need at least one harmonic"));
        }
        if omega_bins == 0 {
            return Err(Error::invalid("omega_bins", "need at least one bin"));
        }
        if !(omega_max.is_finite() && omega_max > 0.0) {
            return Err(Error::invalid("omega_max", "must be finite and positive"));
        }
        if thetas.is_empty() || phis.is_empty() {
            return Err(Error::invalid("grid", "empty angle axis"));
        }
        for w in thetas.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::invalid("thetas", "must increase strictly"));
            }
        }
        for w in phis.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::invalid("phis", "must increase strictly"));
            }
        }
        let t0 = thetas[0];
        let t1 = *thetas.last().expect("nonempty");
        if !(t0 >= 0.0 && t1 <= std::f64::consts::PI) {
            return Err(Error::invalid("thetas", "must lie in [0, pi]"));
        }
        let p0 = phis[0];
        let p1 = *phis.last().expect("nonempty");
        if !(p0 >= 0.0 && p1 < 2.0 * std::f64::consts::PI) {
            return Err(Error::invalid("phis", "must lie in [0, 2pi)"));
        }
        Ok(ScanGrid {
            thetas,
            phis,
            j_max,
            omega_bins,
            omega_max,
        })
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn omega_bins(&self) -> usize {
        self.omega_bins
    }

    pub fn omega_max(&self) -> f64 {
        self.omega_max
    }

    /// Records per harmonic.
    pub fn points_per_harmonic(&self) -> usize {
        self.thetas.len() * self.phis.len()
    }

    /// Total records an angular map produces.
    pub fn total_points(&self) -> usize {
        self.j_max * self.points_per_harmonic()
    }

    /// Trapezoid weights of the closed theta axis (single node: weight 0,
    /// a degenerate ring with no measure).
    pub fn theta_weights(&self) -> Vec<f64> {
        let n = self.thetas.len();
        if n == 1 {
            return vec![0.0];
        }
        let mut w = vec![0.0; n];
        for i in 0..n - 1 {
            let h = 0.5 * (self.thetas[i + 1] - self.thetas[i]);
            w[i] += h;
            w[i + 1] += h;
        }
        w
    }

    /// Periodic weights of the phi axis: half the gap to each neighbor,
    /// wrapping at 2pi.
    pub fn phi_weights(&self) -> Vec<f64> {
        let n = self.phis.len();
        let two_pi = 2.0 * std::f64::consts::PI;
        if n == 1 {
            return vec![two_pi];
        }
        (0..n)
            .map(|i| {
                let next = if i + 1 < n {
                    self.phis[i + 1]
                } else {
                    self.phis[0] + two_pi
                };
                let prev = if i > 0 {
                    self.phis[i - 1]
                } else {
                    self.phis[n - 1] - two_pi
                };
                0.5 * (next - prev)
            })
            .collect()
    }

    /// Uniform bin edges 0 = e_0 < ... < e_bins = omega_max.
    pub fn omega_edges(&self) -> Vec<f64> {
        let n = self.omega_bins;
        (0..=n)
            .map(|i| self.omega_max * i as f64 / n as f64)
            .collect()
    }

    /// Index of the bin containing frequency w, if on the axis.
    pub(crate) fn omega_bin(&self, w: f64) -> Option<usize> {
        if !(w > 0.0 && w <= self.omega_max) {
            return None;
        }
        let idx = (w / self.omega_max * self.omega_bins as f64) as usize;
        Some(idx.min(self.omega_bins - 1))
    }

    /// Highest line the grid can produce, for validating the axis.
    pub fn forward_cutoff(beam: &BeamParams, omega_level: f64, j_max: usize) -> f64 {
        OMEGA_HEADROOM * 2.0 * beam.gamma() * beam.gamma() * omega_level * j_max as f64
    }
}
