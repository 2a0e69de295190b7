//! Scaled oscillator eigenbasis.

use crate::{Error, Result};

use super::hermite::hermite_functions;

/// Largest level index any basis may hold.
///
/// The recurrence behind [`OscillatorBasis::eval`] stays accurate well past
/// this point; the cap bounds memory and makes runaway level requests fail
/// fast instead of grinding.
pub const HARD_LEVEL_CAP: usize = 512;

/// Orthonormal eigenfunctions phi_n(x) of a harmonic transverse channel.
///
/// The single parameter is the dimensionless scale s = E*Omega carried by
/// the wave equation: phi_n(x) = s^{1/4} u_n(sqrt(s) x) with u_n the
/// orthonormal Hermite functions. Positions are in natural units (1/eV).
#[derive(Debug, Clone)]
pub struct OscillatorBasis {
    scale: f64,
    sqrt_scale: f64,
    n_max: usize,
}

impl OscillatorBasis {
    /// Basis with levels 0 ..= n_max, capped at [`HARD_LEVEL_CAP`].
    pub fn new(scale: f64, n_max: usize) -> Result<Self> {
        Self::with_cap(scale, n_max, HARD_LEVEL_CAP)
    }

    /// Same as [`new`](Self::new) with an explicit cap, for callers that
    /// deliberately budget tighter (or probe higher, up to the hard cap).
    pub fn with_cap(scale: f64, n_max: usize, cap: usize) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::invalid(
                "scale",
                format!("must be finite and positive, got {scale:e}"),
            ));
        }
        let cap = cap.min(HARD_LEVEL_CAP);
        if n_max > cap {
            return Err(Error::invalid(
                "n_max",
                format!("{n_max} exceeds the level cap {cap}"),
            ));
        }
        Ok(OscillatorBasis {
            scale,
            sqrt_scale: scale.sqrt(),
            n_max,
        })
    }

    /// Eigenfunction scale E*Omega.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// sqrt(E*Omega), the momentum carried by one unit of dimensionless kick.
    pub fn sqrt_scale(&self) -> f64 {
        self.sqrt_scale
    }

    /// Highest level index held.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Dimensionless coordinate xi = sqrt(E*Omega) x.
    pub fn xi(&self, x: f64) -> f64 {
        self.sqrt_scale * x
    }

    /// phi_n(x). Values below the f64 range (deep classically forbidden
    /// region) come back as an exact 0.
    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        if n > self.n_max {
            return Err(Error::invalid(
                "n",
                format!("level {n} outside basis (n_max = {})", self.n_max),
            ));
        }
        let u = hermite_functions(self.xi(x), n);
        Ok(self.scale.powf(0.25) * u[n])
    }

    /// phi_0(x) ..= phi_{n_max}(x) in one recurrence pass.
    pub fn eval_all(&self, x: f64) -> Vec<f64> {
        let amp = self.scale.powf(0.25);
        let mut u = hermite_functions(self.xi(x), self.n_max);
        for v in &mut u {
            *v *= amp;
        }
        u
    }
}
