//! Angular intensity of one harmonic line.

use crate::specfun::{ClosedFormOverlaps, OscillatorBasis, OverlapSource};
use crate::{Error, Result, ALPHA_FS, C64};

use super::amplitude::EmissionFrame;
use super::beam::BeamParams;
use super::geometry::{cross_rc, dot_rc, EmissionDirection};
use super::model::ChannelModel;

/// Whether the entry-state coherence between levels is kept in the
/// intensity. `Both` evaluates the two variants side by side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interference {
    On,
    Off,
    Both,
}

/// Differential intensity dI/dOmega_k of one harmonic at one direction.
///
/// `coherent` sums amplitudes over the initial level before squaring;
/// `incoherent` squares first. Both are always computed (they share every
/// intermediate product); `pol` carries the per-polarization split of the
/// variant selected by the [`Interference`] switch (the coherent one for
/// `On` and `Both`).
#[derive(Debug, Clone)]
pub struct SpectralRecord {
    pub j: usize,
    pub theta: f64,
    pub phi: f64,
    /// Line frequency in eV (exact Doppler).
    pub omega: f64,
    pub coherent: f64,
    pub incoherent: f64,
    pub pol: [f64; 2],
}

/// Intensity of harmonic j at direction `dir` for an entry state with
/// level coefficients `entry` (index = level, length > n_levels), using
/// the closed-form overlaps.
pub fn harmonic_intensity(
    beam: &BeamParams,
    model: &ChannelModel,
    entry: &[C64],
    dir: &EmissionDirection,
    j: usize,
    interference: Interference,
) -> Result<SpectralRecord> {
    harmonic_intensity_with(
        beam,
        model,
        entry,
        dir,
        j,
        interference,
        &ClosedFormOverlaps,
    )
}

/// Same, with an explicit overlap strategy (quadrature cross-checks).
pub fn harmonic_intensity_with(
    beam: &BeamParams,
    model: &ChannelModel,
    entry: &[C64],
    dir: &EmissionDirection,
    j: usize,
    interference: Interference,
    source: &dyn OverlapSource,
) -> Result<SpectralRecord> {
    if j == 0 || j > model.n_levels() {
        return Err(Error::invalid(
            "j",
            format!(
                "harmonic must lie in 1..={} (retained levels), got {j}",
                model.n_levels()
            ),
        ));
    }
    if entry.len() <= model.n_levels() {
        return Err(Error::invalid(
            "entry",
            format!(
                "need coefficients through level {}, got {}",
                model.n_levels(),
                entry.len()
            ),
        ));
    }
    let frame = EmissionFrame::new(beam, model, dir, j)?;
    let basis = OscillatorBasis::new(beam.energy() * model.omega(), model.n_levels() + 1)?;
    let families = source.families(&basis, j, frame.k_x, model.n_levels())?;

    let zero = C64::new(0.0, 0.0);
    let mut coh_a = [zero; 2];
    let mut coh_d = [[zero; 3]; 2];
    let mut inc = [0.0f64; 2];

    // The level index n is semantic (ladder position), not just a slot.
    #[allow(clippy::needless_range_loop)]
    for n in j..=model.n_levels() {
        let (a_vec, b_vec) = frame.assemble(families.i1(n), families.i2(n));
        let cn = entry[n];
        for lambda in 0..2 {
            let eps = dir.polarization(lambda);
            let za = cn * dot_rc(eps, &a_vec);
            let zd = cross_rc(eps, &b_vec).map(|v| cn * v);
            coh_a[lambda] += za;
            let mut sq = za.norm_sqr();
            for i in 0..3 {
                coh_d[lambda][i] += zd[i];
                sq += zd[i].norm_sqr();
            }
            inc[lambda] += sq;
        }
    }

    let prefactor = ALPHA_FS * frame.omega * frame.omega
        / (2.0 * std::f64::consts::PI * (1.0 - beam.beta_parallel() * dir.theta().cos()));

    let mut coh = [0.0f64; 2];
    for lambda in 0..2 {
        // Accumulation order mirrors the incoherent sum above, so a single
        // occupied level reproduces it bit for bit.
        let mut sq = coh_a[lambda].norm_sqr();
        for z in &coh_d[lambda] {
            sq += z.norm_sqr();
        }
        coh[lambda] = prefactor * sq;
    }
    let inc = [prefactor * inc[0], prefactor * inc[1]];

    let pol = match interference {
        Interference::Off => inc,
        Interference::On | Interference::Both => coh,
    };
    Ok(SpectralRecord {
        j,
        theta: dir.theta(),
        phi: dir.phi(),
        omega: frame.omega,
        coherent: coh[0] + coh[1],
        incoherent: inc[0] + inc[1],
        pol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{entry_coefficients, BeamParams, ChannelModel};

    const V0: f64 = 23.0;
    const DP: f64 = 1.92;
    const E: f64 = 1.0e9;

    fn defaults() -> (BeamParams, ChannelModel, Vec<C64>) {
        let model = ChannelModel::new(V0, DP, E).unwrap();
        let beam = BeamParams::new(E, 0.5 * model.critical_angle(E)).unwrap();
        let c = entry_coefficients(&beam, &model).unwrap();
        (beam, model, c)
    }

    fn probe(
        beam: &BeamParams,
        model: &ChannelModel,
        c: &[C64],
        theta: f64,
        phi: f64,
        j: usize,
    ) -> SpectralRecord {
        let dir = EmissionDirection::new(theta, phi).unwrap();
        harmonic_intensity(beam, model, c, &dir, j, Interference::Both).unwrap()
    }

    #[test]
    fn intensities_are_positive_and_finite_across_the_cone() {
        let (beam, model, c) = defaults();
        let g = beam.gamma();
        for i in 0..5 {
            for k in 0..4 {
                let theta = (i as f64 * 1.2 + 0.1) / g;
                let r = probe(&beam, &model, &c, theta, 0.4 + k as f64, 1 + k % 3);
                assert!(r.coherent.is_finite() && r.coherent >= 0.0);
                assert!(r.incoherent.is_finite() && r.incoherent > 0.0);
                assert!(r.pol[0] >= 0.0 && r.pol[1] >= 0.0);
            }
        }
    }

    // On axis the photon carries no transverse kick, so transitions with
    // level change above 1 have no matrix element: only j = 1 radiates.
    #[test]
    fn higher_harmonics_are_dark_on_axis() {
        let (beam, model, c) = defaults();
        let on_axis_j1 = probe(&beam, &model, &c, 0.0, 0.7, 1);
        assert!(on_axis_j1.incoherent > 0.0);
        for j in 2..=4 {
            let r = probe(&beam, &model, &c, 0.0, 0.7, j);
            assert_eq!(r.coherent, 0.0);
            assert_eq!(r.incoherent, 0.0);
        }
    }

    #[test]
    fn mirror_azimuths_radiate_identically() {
        let (beam, model, c) = defaults();
        let g = beam.gamma();
        for &phi in &[0.3, 1.1, 2.9] {
            for &theta in &[0.4 / g, 1.7 / g] {
                let base = probe(&beam, &model, &c, theta, phi, 1);
                let refl = probe(&beam, &model, &c, theta, -phi, 1);
                let supp = probe(&beam, &model, &c, theta, std::f64::consts::PI - phi, 1);
                for other in [&refl, &supp] {
                    assert!((base.coherent - other.coherent).abs() <= 1e-12 * base.coherent);
                    assert!((base.incoherent - other.incoherent).abs() <= 1e-12 * base.incoherent);
                    for l in 0..2 {
                        assert!(
                            (base.pol[l] - other.pol[l]).abs()
                                <= 1e-12 * base.pol[l].abs().max(1e-300)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn single_level_occupation_erases_the_interference_split() {
        let (beam, model, _) = defaults();
        let mut c = vec![C64::new(0.0, 0.0); model.n_levels() + 1];
        c[3] = C64::new(0.8, 0.3);
        let g = beam.gamma();
        for j in 1..=3 {
            for mode in [Interference::On, Interference::Off, Interference::Both] {
                let dir = EmissionDirection::new(0.9 / g, 0.7).unwrap();
                let r = harmonic_intensity(&beam, &model, &c, &dir, j, mode).unwrap();
                assert_eq!(r.coherent.to_bits(), r.incoherent.to_bits());
                assert_eq!(r.pol[0] + r.pol[1], r.coherent);
            }
        }
    }

    #[test]
    fn harmonic_ladder_decays_at_the_probe_direction() {
        let (beam, model, c) = defaults();
        let g = beam.gamma();
        let mut prev = f64::INFINITY;
        for j in 1..=5 {
            let r = probe(&beam, &model, &c, 1.0 / g, std::f64::consts::FRAC_PI_4, j);
            assert!(r.coherent < prev);
            prev = r.coherent;
        }
    }

    #[test]
    fn interference_matters_for_a_coherent_entry_state() {
        let (beam, model, c) = defaults();
        let g = beam.gamma();
        let r = probe(&beam, &model, &c, 1.0 / g, std::f64::consts::FRAC_PI_4, 1);
        let rel = (r.coherent - r.incoherent).abs() / r.incoherent;
        assert!(rel > 0.01, "split {rel:e}");
    }

    #[test]
    fn harmonic_outside_the_ladder_is_rejected() {
        let (beam, model, c) = defaults();
        let dir = EmissionDirection::new(1e-4, 0.0).unwrap();
        assert!(harmonic_intensity(&beam, &model, &c, &dir, 0, Interference::Both).is_err());
        assert!(harmonic_intensity(
            &beam,
            &model,
            &c,
            &dir,
            model.n_levels() + 1,
            Interference::Both
        )
        .is_err());
        let short = vec![C64::new(1.0, 0.0); model.n_levels()];
        assert!(harmonic_intensity(&beam, &model, &short, &dir, 1, Interference::Both).is_err());
    }
}
