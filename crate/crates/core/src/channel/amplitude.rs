//! First-order photon emission amplitudes between transverse levels.
//!
//! The spin-resolved matrix element for the drop n -> n - j with photon
//! (omega, k_hat, eps) factorizes, for each polarization, into
//!
//! ```text
//! M = chi'^dag ( a + i sigma . d ) chi,    a = eps . A,   d = eps x B
//! ```
//!
//! with two complex vectors built from the overlap integrals I1, I2 and
//! the recoil-exact kinematics of the final electron (energy E' = E -
//! omega, longitudinal momentum p_par - k_z, sideways recoil -k_y):
//!
//! ```text
//! A = ( -i I2 c+ , 0 , I1 p_par c+ )
//! B = (  i I2 c- + k_x I1 / (E'+m) , k_y I1 / (E'+m) ,
//!        I1 ( p_par/(E+m) - (p_par - k_z)/(E'+m) ) )
//! c+- = 1/(E'+m) +- 1/(E+m)
//! ```
//!
//! both carrying the spinor normalization sqrt((E+m)/2E) sqrt((E'+m)/2E').
//! The x direction is special: the transverse bound motion lives there, so
//! its momentum enters through I2 while y and z act on the plane-wave
//! factors.

use crate::specfun::{derivative_i2, overlap_i1, OscillatorBasis};
use crate::{Error, Result, C64};

use super::beam::BeamParams;
use super::geometry::{cross_rc, dot_rc, EmissionDirection};
use super::kinematics::exact_doppler;
use super::model::ChannelModel;

const I: C64 = C64::new(0.0, 1.0);

/// Kinematic frame of one emission: everything that depends on (j, theta,
/// phi) but not on the initial level n.
pub(crate) struct EmissionFrame {
    pub omega: f64,
    pub k_x: f64,
    k_y: f64,
    c_plus: f64,
    c_minus: f64,
    inv_final: f64,
    z_imbalance: f64,
    p_parallel: f64,
    norm: f64,
}

impl EmissionFrame {
    pub(crate) fn new(
        beam: &BeamParams,
        model: &ChannelModel,
        dir: &EmissionDirection,
        j: usize,
    ) -> Result<Self> {
        let omega = if j == 0 {
            0.0
        } else {
            exact_doppler(beam, model, j as f64, dir.theta())
        };
        Self::at_frequency(beam, dir, omega)
    }

    pub(crate) fn at_frequency(
        beam: &BeamParams,
        dir: &EmissionDirection,
        omega: f64,
    ) -> Result<Self> {
        let e = beam.energy();
        let m = beam.mass();
        let e_final = e - omega;
        if e_final <= m {
            return Err(Error::Numeric(format!(
                "photon of {omega:e} eV leaves the electron below its rest mass"
            )));
        }
        let k = dir.k_hat();
        let (k_x, k_y, k_z) = (omega * k[0], omega * k[1], omega * k[2]);
        let inv_initial = 1.0 / (e + m);
        let inv_final = 1.0 / (e_final + m);
        let p_parallel = beam.p_parallel();
        Ok(EmissionFrame {
            omega,
            k_x,
            k_y,
            c_plus: inv_final + inv_initial,
            c_minus: inv_final - inv_initial,
            inv_final,
            z_imbalance: p_parallel * inv_initial - (p_parallel - k_z) * inv_final,
            p_parallel,
            norm: ((e + m) / (2.0 * e)).sqrt() * ((e_final + m) / (2.0 * e_final)).sqrt(),
        })
    }

    /// The convective vector A and magnetization vector B for initial
    /// level n, given its overlaps. Spinor normalization included.
    pub(crate) fn assemble(&self, i1: C64, i2: C64) -> ([C64; 3], [C64; 3]) {
        let zero = C64::new(0.0, 0.0);
        let a = [
            -I * i2 * self.c_plus * self.norm,
            zero,
            i1 * (self.p_parallel * self.c_plus * self.norm),
        ];
        let b = [
            (I * i2 * self.c_minus + i1 * (self.k_x * self.inv_final)) * self.norm,
            i1 * (self.k_y * self.inv_final * self.norm),
            i1 * (self.z_imbalance * self.norm),
        ];
        (a, b)
    }
}

/// Fully projected amplitude of a single drop n -> n - j.
#[derive(Debug, Clone)]
pub struct TransitionAmplitude {
    pub n: usize,
    pub j: usize,
    /// Photon energy in eV (0 for the elastic j = 0 probe).
    pub omega: f64,
    /// Convective current vector A (normalization folded in).
    pub convective: [C64; 3],
    /// Magnetization vector B (normalization folded in).
    pub magnetic: [C64; 3],
    /// Spin-independent part a_lambda = eps_lambda . A.
    pub a: [C64; 2],
    /// Spin-flip part d_lambda = eps_lambda x B.
    pub d: [[C64; 3]; 2],
}

/// Amplitude of the single drop n -> n - j into a photon along `dir`.
///
/// j = 0 is admitted as a zero-frequency structural probe; emission
/// proper starts at j = 1.
pub fn transition_amplitude(
    beam: &BeamParams,
    model: &ChannelModel,
    dir: &EmissionDirection,
    n: usize,
    j: usize,
) -> Result<TransitionAmplitude> {
    if j > n {
        return Err(Error::invalid(
            "j",
            format!("drop of {j} from level {n} has no landing level"),
        ));
    }
    if n > model.n_levels() {
        return Err(Error::invalid(
            "n",
            format!("level {n} above the retained ladder ({})", model.n_levels()),
        ));
    }
    let frame = EmissionFrame::new(beam, model, dir, j)?;
    let basis = OscillatorBasis::new(beam.energy() * model.omega(), n + 1)?;
    let i1 = overlap_i1(&basis, n, n - j, frame.k_x)?;
    let i2 = derivative_i2(&basis, n, n - j, frame.k_x)?;
    let (a_vec, b_vec) = frame.assemble(i1, i2);
    let a = [
        dot_rc(dir.polarization(0), &a_vec),
        dot_rc(dir.polarization(1), &a_vec),
    ];
    let d = [
        cross_rc(dir.polarization(0), &b_vec),
        cross_rc(dir.polarization(1), &b_vec),
    ];
    Ok(TransitionAmplitude {
        n,
        j,
        omega: frame.omega,
        convective: a_vec,
        magnetic: b_vec,
        a,
        d,
    })
}

/// Spin-averaged, spin-summed squared matrix element of a + i sigma . d
/// between two-spinors:
///
/// ```text
/// (1/2) sum_{s s'} |<s'| a + i sigma . d |s>|^2 = |a|^2 + d . d*
/// ```
///
/// The cross terms cancel in the trace, whatever the relative phases.
pub fn spin_polarization_reduce(a: C64, d: &[C64; 3]) -> f64 {
    a.norm_sqr() + d[0].norm_sqr() + d[1].norm_sqr() + d[2].norm_sqr()
}
