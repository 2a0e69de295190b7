//! Incoming beam kinematics.

use crate::{Error, Result, ELECTRON_MASS_EV};

/// Kinematic state of the entering positron.
///
/// The entry tilt theta_in (radians, in the x-z plane) sets the sharp
/// transverse momentum p_x = E * theta_in; the longitudinal motion keeps
/// p_par = sqrt(E^2 - m^2 - p_x^2). The Doppler factor of the emission
/// runs on beta_par = p_par / sqrt(p_par^2 + m^2), the speed of the
/// longitudinal guiding motion.
#[derive(Debug, Clone)]
pub struct BeamParams {
    energy: f64,
    mass: f64,
    theta_in: f64,
    p_x: f64,
    p_parallel: f64,
    beta_parallel: f64,
    gamma: f64,
}

impl BeamParams {
    /// Positron beam of total energy `energy_ev` entering at `theta_in_rad`.
    pub fn new(energy_ev: f64, theta_in_rad: f64) -> Result<Self> {
        Self::with_mass(energy_ev, theta_in_rad, ELECTRON_MASS_EV)
    }

    /// Same, for an arbitrary lepton mass.
    pub fn with_mass(energy_ev: f64, theta_in_rad: f64, mass_ev: f64) -> Result<Self> {
        if !(mass_ev.is_finite() && mass_ev > 0.0) {
            return Err(Error::invalid(
                "mass_ev",
                format!("must be finite and positive, got {mass_ev:e}"),
            ));
        }
        if !(energy_ev.is_finite() && energy_ev > mass_ev) {
            return Err(Error::invalid(
                "energy_ev",
                format!("must exceed the rest mass {mass_ev:e} eV, got {energy_ev:e}"),
            ));
        }
        if !theta_in_rad.is_finite() {
            return Err(Error::invalid("theta_in_rad", "must be finite"));
        }
        let p_x = energy_ev * theta_in_rad;
        let p_par_sq = energy_ev * energy_ev - mass_ev * mass_ev - p_x * p_x;
        if p_par_sq <= 0.0 {
            return Err(Error::invalid(
                "theta_in_rad",
                format!("tilt {theta_in_rad:e} leaves no longitudinal momentum"),
            ));
        }
        let p_parallel = p_par_sq.sqrt();
        let e_parallel = (p_par_sq + mass_ev * mass_ev).sqrt();
        Ok(BeamParams {
            energy: energy_ev,
            mass: mass_ev,
            theta_in: theta_in_rad,
            p_x,
            p_parallel,
            beta_parallel: p_parallel / e_parallel,
            gamma: energy_ev / mass_ev,
        })
    }

    /// Total energy in eV.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Lepton mass in eV.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Entry tilt in radians.
    pub fn theta_in(&self) -> f64 {
        self.theta_in
    }

    /// Transverse entry momentum E * theta_in.
    pub fn p_x(&self) -> f64 {
        self.p_x
    }

    /// Longitudinal momentum magnitude.
    pub fn p_parallel(&self) -> f64 {
        self.p_parallel
    }

    /// Speed of the longitudinal guiding motion.
    pub fn beta_parallel(&self) -> f64 {
        self.beta_parallel
    }

    /// Lorentz factor E / m.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}
