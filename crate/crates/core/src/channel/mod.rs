//! Beam kinematics, the harmonic channel, and per-harmonic emission.
//!
//! Coordinates: x is the channel normal (the confined direction), z the
//! beam axis, y completes the frame in the channel plane. The positron
//! enters with a small tilt theta_in in the x-z plane, populating
//! transverse levels coherently; dropping j levels emits a photon whose
//! lab frequency follows from the longitudinal Doppler factor.

mod amplitude;
mod beam;
mod geometry;
mod intensity;
mod kinematics;
mod model;

pub use amplitude::{spin_polarization_reduce, transition_amplitude, TransitionAmplitude};
pub use beam::BeamParams;
pub use geometry::EmissionDirection;
pub use intensity::{harmonic_intensity, harmonic_intensity_with, Interference, SpectralRecord};
pub use kinematics::{doppler_frequency, entry_coefficients, DopplerMode};
pub use model::{oscillator_frequency, ChannelModel};
