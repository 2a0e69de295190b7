//! Harmonic model of one planar channel.

use crate::specfun::HARD_LEVEL_CAP;
use crate::{Error, Result, HBARC_EV_ANGSTROM};

/// Transverse level spacing Omega = (2 / d_p) sqrt(2 V0 / E) in eV, for a
/// parabolic well of depth `v0_ev` spanning plane spacing `d_p_angstrom`,
/// ridden by a positron of total energy `energy_ev`.
///
/// The spacing shrinks as 1/sqrt(E): heavier effective inertia, softer
/// transverse oscillation.
pub fn oscillator_frequency(v0_ev: f64, d_p_angstrom: f64, energy_ev: f64) -> Result<f64> {
    check_positive("v0_ev", v0_ev)?;
    check_positive("d_p_angstrom", d_p_angstrom)?;
    check_positive("energy_ev", energy_ev)?;
    let d_p = d_p_angstrom / HBARC_EV_ANGSTROM;
    Ok((2.0 / d_p) * (2.0 * v0_ev / energy_ev).sqrt())
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::invalid(
            name,
            format!("must be finite and positive, got {v:e}"),
        ));
    }
    Ok(())
}

/// Parabolic approximation of a planar channel: well depth V0, plane
/// spacing d_p, and the ladder of transverse levels eps_n = Omega (n + 1/2)
/// it supports for a given beam energy.
///
/// `n_levels` is the highest level the emission pipeline retains. The
/// physical ceiling is the highest level still bound (eps_n <= V0); the
/// extended constructor may exceed it for truncation probes, never the
/// hard basis cap.
#[derive(Debug, Clone)]
pub struct ChannelModel {
    v0: f64,
    d_p: f64,
    omega: f64,
    n_max_physical: usize,
    n_levels: usize,
}

impl ChannelModel {
    /// Model retaining every bound level.
    pub fn new(v0_ev: f64, d_p_angstrom: f64, energy_ev: f64) -> Result<Self> {
        let (omega, n_max_physical) = Self::frame(v0_ev, d_p_angstrom, energy_ev)?;
        Ok(ChannelModel {
            v0: v0_ev,
            d_p: d_p_angstrom / HBARC_EV_ANGSTROM,
            omega,
            n_max_physical,
            n_levels: n_max_physical,
        })
    }

    /// Model truncated to `n_levels` (must not exceed the bound ceiling).
    pub fn with_levels(
        v0_ev: f64,
        d_p_angstrom: f64,
        energy_ev: f64,
        n_levels: usize,
    ) -> Result<Self> {
        let model = Self::new(v0_ev, d_p_angstrom, energy_ev)?;
        if n_levels > model.n_max_physical {
            return Err(Error::invalid(
                "n_levels",
                format!(
                    "{n_levels} exceeds the {} bound levels of this channel",
                    model.n_max_physical
                ),
            ));
        }
        Ok(ChannelModel { n_levels, ..model })
    }

    /// Diagnostic variant that may retain unbound levels, for truncation
    /// probes. Capped so the eigenbasis (one ladder level above) still
    /// fits the hard level cap.
    pub fn with_levels_extended(
        v0_ev: f64,
        d_p_angstrom: f64,
        energy_ev: f64,
        n_levels: usize,
    ) -> Result<Self> {
        let model = Self::new(v0_ev, d_p_angstrom, energy_ev)?;
        if n_levels + 1 > HARD_LEVEL_CAP {
            return Err(Error::invalid(
                "n_levels",
                format!(
                    "{n_levels} exceeds the hard level cap {}",
                    HARD_LEVEL_CAP - 1
                ),
            ));
        }
        Ok(ChannelModel { n_levels, ..model })
    }

    /// This model with the retained ladder re-cut to `n_levels`, bound
    /// ceiling ignored (diagnostic; spacing and depth carry over exactly).
    pub fn extend_levels(&self, n_levels: usize) -> Result<Self> {
        if n_levels + 1 > HARD_LEVEL_CAP {
            return Err(Error::invalid(
                "n_levels",
                format!(
                    "{n_levels} exceeds the hard level cap {}",
                    HARD_LEVEL_CAP - 1
                ),
            ));
        }
        Ok(ChannelModel {
            n_levels,
            ..self.clone()
        })
    }

    fn frame(v0_ev: f64, d_p_angstrom: f64, energy_ev: f64) -> Result<(f64, usize)> {
        let omega = oscillator_frequency(v0_ev, d_p_angstrom, energy_ev)?;
        let depth = v0_ev / omega - 0.5;
        if depth < 0.0 {
            return Err(Error::invalid(
                "v0_ev",
                format!("well holds no bound level (V0 = {v0_ev:e} eV, Omega = {omega:e} eV)"),
            ));
        }
        let n_max_physical = depth as usize;
        if n_max_physical + 1 > HARD_LEVEL_CAP {
            return Err(Error::invalid(
                "v0_ev",
                format!(
                    "channel supports {n_max_physical} bound levels, beyond the hard cap {}",
                    HARD_LEVEL_CAP - 1
                ),
            ));
        }
        Ok((omega, n_max_physical))
    }

    /// Well depth in eV.
    pub fn v0(&self) -> f64 {
        self.v0
    }

    /// Plane spacing in natural units (1/eV).
    pub fn plane_spacing(&self) -> f64 {
        self.d_p
    }

    /// Level spacing Omega in eV.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Highest level the pipeline retains.
    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    /// Highest bound level (eps_n <= V0).
    pub fn n_max_physical(&self) -> usize {
        self.n_max_physical
    }

    /// Transverse level energy eps_n = Omega (n + 1/2).
    pub fn level_energy(&self, n: usize) -> f64 {
        self.omega * (n as f64 + 0.5)
    }

    /// Planar critical angle sqrt(2 V0 / E): tilts beyond it enter above
    /// the well rim.
    pub fn critical_angle(&self, energy_ev: f64) -> f64 {
        (2.0 * self.v0 / energy_ev).sqrt()
    }
}
