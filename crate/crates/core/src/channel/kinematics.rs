//! Doppler upshift and entry-state decomposition.

use crate::specfun::{hermite_functions, OscillatorBasis};
use crate::{Error, Result, C64};

use super::beam::BeamParams;
use super::model::ChannelModel;

/// How the lab frequency of a harmonic line is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DopplerMode {
    /// omega = j Omega / (1 - beta_par cos theta); valid at any angle.
    Exact,
    /// omega = 2 gamma^2 j Omega / (1 + (gamma theta)^2); the forward-cone
    /// approximation, presuming theta << 1 and p_x << m.
    SmallAngle,
}

/// Lab frequency (eV) of harmonic j >= 1 emitted at polar angle theta.
///
/// The transverse oscillation at Omega is dragged by the longitudinal
/// motion; in the forward cone the line lands at MeV scale for GeV beams,
/// compressed by 1/(1 - beta_par cos theta) ~ 2 gamma^2.
pub fn doppler_frequency(
    beam: &BeamParams,
    model: &ChannelModel,
    j: usize,
    theta: f64,
    mode: DopplerMode,
) -> Result<f64> {
    if j == 0 {
        return Err(Error::invalid("j", "harmonic must be >= 1"));
    }
    if !(theta.is_finite() && (0.0..=std::f64::consts::PI).contains(&theta)) {
        return Err(Error::invalid(
            "theta",
            format!("must lie in [0, pi], got {theta:e}"),
        ));
    }
    let jf = j as f64;
    Ok(match mode {
        DopplerMode::Exact => exact_doppler(beam, model, jf, theta),
        DopplerMode::SmallAngle => {
            let g = beam.gamma();
            let gt = g * theta;
            2.0 * g * g * model.omega() * jf / (1.0 + gt * gt)
        }
    })
}

pub(crate) fn exact_doppler(beam: &BeamParams, model: &ChannelModel, jf: f64, theta: f64) -> f64 {
    jf * model.omega() / (1.0 - beam.beta_parallel() * theta.cos())
}

/// Coefficients c_n of the entering transverse plane wave exp(i p_x x)
/// over levels 0 ..= n_levels:
///
/// ```text
/// c_n = i^n sqrt(2 pi) (E Omega)^{-1/4} u_n(p_x / sqrt(E Omega))
/// ```
///
/// normalized so that sum_n c_n phi_n(x) converges (slowly; the weights
/// fall off only as n^{-1/2}) to exp(i p_x x). A sharp transverse momentum
/// is not normalizable, so overall intensity carries this delta-function
/// convention; shapes and ratios are the meaningful output.
pub fn entry_coefficients(beam: &BeamParams, model: &ChannelModel) -> Result<Vec<C64>> {
    let scale = beam.energy() * model.omega();
    // Validates the scale; the basis itself is only needed for its cap.
    let basis = OscillatorBasis::new(scale, model.n_levels() + 1)?;
    let p_tilde = beam.p_x() / basis.sqrt_scale();
    let amp = (2.0 * std::f64::consts::PI).sqrt() * scale.powf(-0.25);
    let u = hermite_functions(p_tilde, model.n_levels());
    Ok(u.iter()
        .enumerate()
        .map(|(n, &un)| i_power(n) * (amp * un))
        .collect())
}

/// i^n.
fn i_power(n: usize) -> C64 {
    match n % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}
