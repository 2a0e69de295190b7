//! Wave-equation and entry-state diagnostics.

use crate::specfun::{hermite_functions, OscillatorBasis, HARD_LEVEL_CAP};
use crate::{Error, Result, C64};

/// Normalized residual of the transverse wave equation at level n:
/// max over the grid of |H phi_n - eps_n phi_n| / (eps_n max|phi_n|), with
/// H = -(1/2E) d^2/dx^2 + (E Omega^2 / 2) x^2 discretized by the 5-point
/// second-difference stencil at dimensionless spacing `h_xi`, on the span
/// |xi| <= sqrt(2n + 1) + 4 (the classical turning point plus tail).
pub fn schroedinger_residual(energy_ev: f64, omega_ev: f64, n: usize, h_xi: f64) -> Result<f64> {
    schroedinger_residual_at(energy_ev, omega_ev, n, h_xi, omega_ev * (n as f64 + 0.5))
}

/// Same residual against an arbitrary trial level energy; detunings of a
/// fraction of a level spacing must light this up by orders of magnitude.
pub fn schroedinger_residual_at(
    energy_ev: f64,
    omega_ev: f64,
    n: usize,
    h_xi: f64,
    level_energy_ev: f64,
) -> Result<f64> {
    if !(h_xi.is_finite() && h_xi > 0.0 && h_xi <= 0.01) {
        return Err(Error::invalid(
            "h_xi",
            format!("stencil spacing must lie in (0, 0.01], got {h_xi:e}"),
        ));
    }
    // The basis scale E*Omega only sets units; validating it here keeps the
    // signature honest while the xi-space equation stays scale-free.
    OscillatorBasis::new(energy_ev * omega_ev, 0)?;
    if n > HARD_LEVEL_CAP {
        return Err(Error::invalid("n", format!("level {n} beyond the cap")));
    }
    if !(level_energy_ev.is_finite() && level_energy_ev != 0.0) {
        return Err(Error::invalid(
            "level_energy_ev",
            "must be finite and nonzero",
        ));
    }

    let span = (2.0 * n as f64 + 1.0).sqrt() + 4.0;
    let count = (2.0 * span / h_xi).ceil() as usize + 1;
    let phi: Vec<f64> = (0..count)
        .map(|i| {
            let xi = -span + i as f64 * h_xi;
            hermite_functions(xi, n)[n]
        })
        .collect();
    let peak = phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Err(Error::Numeric(format!(
            "eigenfunction {n} vanished over the whole grid"
        )));
    }

    // In xi the equation reads -(Omega/2) phi'' + (Omega/2) xi^2 phi = eps phi;
    // the eigenfunction scale cancels against the peak normalization.
    let h2 = h_xi * h_xi;
    let mut worst = 0.0f64;
    for i in 2..count - 2 {
        let xi = -span + i as f64 * h_xi;
        let d2 = (-phi[i - 2] + 16.0 * phi[i - 1] - 30.0 * phi[i] + 16.0 * phi[i + 1] - phi[i + 2])
            / (12.0 * h2);
        let r = -0.5 * omega_ev * d2 + 0.5 * omega_ev * xi * xi * phi[i] - level_energy_ev * phi[i];
        worst = worst.max(r.abs());
    }
    Ok(worst / (level_energy_ev.abs() * peak))
}

/// Sup over |xi| <= 3 (step 0.025) of |sum_{n < n_terms} c_n phi_n - e^{i pt xi}|,
/// the partial reconstruction error of a transverse plane wave with
/// dimensionless momentum pt from its level expansion.
///
/// Coefficients are re-derived here from the generating identity (the
/// scale drops out of the product c_n phi_n), independent of the channel
/// module. The expansion converges, but slowly: the sup error falls off as
/// 3 / sqrt(pi n_terms), because a sharp-momentum wave spreads over levels
/// with weights decaying only as n^{-1/2}.
pub fn plane_wave_deviation(p_tilde: f64, n_terms: usize) -> Result<f64> {
    if n_terms == 0 || n_terms > HARD_LEVEL_CAP {
        return Err(Error::invalid(
            "n_terms",
            format!("must lie in 1..={HARD_LEVEL_CAP}, got {n_terms}"),
        ));
    }
    if !p_tilde.is_finite() {
        return Err(Error::invalid("p_tilde", "must be finite"));
    }
    let root_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    let u_p = hermite_functions(p_tilde, n_terms - 1);
    let mut worst = 0.0f64;
    for i in 0..=240 {
        let xi = -3.0 + i as f64 * 0.025;
        let u_x = hermite_functions(xi, n_terms - 1);
        let mut acc = C64::new(0.0, 0.0);
        for n in 0..n_terms {
            let w = root_two_pi * u_p[n] * u_x[n];
            acc += match n % 4 {
                0 => C64::new(w, 0.0),
                1 => C64::new(0.0, w),
                2 => C64::new(-w, 0.0),
                _ => C64::new(0.0, -w),
            };
        }
        let target = C64::new(0.0, p_tilde * xi).exp();
        worst = worst.max((acc - target).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: f64 = 1.0e9;
    const OMEGA: f64 = 0.440_853_357_752_757_2;

    #[test]
    fn eigenfunctions_solve_their_equation_to_stencil_accuracy() {
        for &n in &[0usize, 5, 10, 20] {
            let r = schroedinger_residual(E, OMEGA, n, 1e-3).unwrap();
            assert!(r < 1e-8, "n = {n}: residual {r:e}");
        }
    }

    #[test]
    fn detuned_level_energy_lights_up_the_residual() {
        let tuned = schroedinger_residual(E, OMEGA, 10, 1e-3).unwrap();
        let detuned = schroedinger_residual_at(E, OMEGA, 10, 1e-3, OMEGA * 10.6).unwrap();
        assert!(detuned > 1e-3);
        assert!(detuned > 1e4 * tuned);
    }

    #[test]
    fn coarse_stencils_are_rejected() {
        assert!(schroedinger_residual(E, OMEGA, 3, 0.1).is_err());
        assert!(schroedinger_residual(E, OMEGA, 3, 0.0).is_err());
    }

    #[test]
    fn axial_wave_reconstruction_follows_the_envelope() {
        // Measured sup errors for pt = 0; regression windows around them.
        let d40 = plane_wave_deviation(0.0, 40).unwrap();
        assert!((0.09..0.10).contains(&d40), "dev(40) = {d40}");
        let d512 = plane_wave_deviation(0.0, 512).unwrap();
        assert!((0.02..0.03).contains(&d512), "dev(512) = {d512}");
        assert!(d512 < d40);
    }

    #[test]
    fn tilted_wave_reconstruction_follows_the_envelope() {
        let pt = 5.107_423_186_039_072;
        for &n in &[64usize, 128, 512] {
            let dev = plane_wave_deviation(pt, n).unwrap();
            let envelope = 3.0 / (std::f64::consts::PI * n as f64).sqrt();
            assert!(dev <= envelope, "n = {n}: {dev} vs {envelope}");
        }
    }
}
