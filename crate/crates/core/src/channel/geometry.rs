//! Emission direction and polarization frame.

use crate::{Error, Result, C64};

/// A photon direction (theta from the beam axis, phi from the channel
/// normal) together with its transverse polarization pair.
///
/// k_hat = (sin t sin p, sin t cos p, cos t); eps1 = (cos p, -sin p, 0)
/// lies in the crystal x-y plane, eps2 = (-cos t sin p, -cos t cos p,
/// sin t) carries the polar component. The closed forms are regular at
/// theta = 0, where a naive "transverse to k" construction degenerates.
#[derive(Debug, Clone)]
pub struct EmissionDirection {
    theta: f64,
    phi: f64,
    k_hat: [f64; 3],
    eps: [[f64; 3]; 2],
}

impl EmissionDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(theta.is_finite() && (0.0..=std::f64::consts::PI).contains(&theta)) {
            return Err(Error::invalid(
                "theta",
                format!("must lie in [0, pi], got {theta:e}"),
            ));
        }
        if !phi.is_finite() {
            return Err(Error::invalid("phi", "must be finite"));
        }
        let (st, ct) = (theta.sin(), theta.cos());
        let (sp, cp) = (phi.sin(), phi.cos());
        Ok(EmissionDirection {
            theta,
            phi,
            k_hat: [st * sp, st * cp, ct],
            eps: [[cp, -sp, 0.0], [-ct * sp, -ct * cp, st]],
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Unit propagation direction.
    pub fn k_hat(&self) -> &[f64; 3] {
        &self.k_hat
    }

    /// Polarization unit vector for lambda in {0, 1}.
    pub fn polarization(&self, lambda: usize) -> &[f64; 3] {
        &self.eps[lambda]
    }
}

/// eps . v for a complex vector v.
pub(crate) fn dot_rc(eps: &[f64; 3], v: &[C64; 3]) -> C64 {
    v[0] * eps[0] + v[1] * eps[1] + v[2] * eps[2]
}

/// eps x v for a complex vector v.
pub(crate) fn cross_rc(eps: &[f64; 3], v: &[C64; 3]) -> [C64; 3] {
    [
        v[2] * eps[1] - v[1] * eps[2],
        v[0] * eps[2] - v[2] * eps[0],
        v[1] * eps[0] - v[0] * eps[1],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    #[test]
    fn frame_is_orthonormal_everywhere() {
        for i in 0..7 {
            for k in 0..9 {
                let theta = std::f64::consts::PI * i as f64 / 6.0;
                let phi = 2.0 * std::f64::consts::PI * k as f64 / 8.0 + 0.123;
                let dir = EmissionDirection::new(theta, phi).unwrap();
                let k_hat = dir.k_hat();
                let e1 = dir.polarization(0);
                let e2 = dir.polarization(1);
                assert!((dot(k_hat, k_hat) - 1.0).abs() < 1e-14);
                assert!((dot(e1, e1) - 1.0).abs() < 1e-14);
                assert!((dot(e2, e2) - 1.0).abs() < 1e-14);
                assert!(dot(e1, k_hat).abs() < 1e-14);
                assert!(dot(e2, k_hat).abs() < 1e-14);
                assert!(dot(e1, e2).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn forward_direction_keeps_a_definite_frame() {
        let dir = EmissionDirection::new(0.0, 0.3).unwrap();
        assert_eq!(dir.k_hat()[2], 1.0);
        assert!((dot(dir.polarization(0), dir.polarization(0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn backward_and_invalid_angles() {
        assert!(EmissionDirection::new(std::f64::consts::PI, 0.0).is_ok());
        assert!(EmissionDirection::new(-0.1, 0.0).is_err());
        assert!(EmissionDirection::new(3.2, 0.0).is_err());
        assert!(EmissionDirection::new(0.1, f64::INFINITY).is_err());
    }

    #[test]
    fn cross_product_matches_hand_expansion() {
        let eps = [0.0, 1.0, 0.0];
        let v = [C64::new(1.0, 2.0), C64::new(0.0, 0.0), C64::new(3.0, -1.0)];
        let w = cross_rc(&eps, &v);
        // y x v = (v_z, 0, -v_x)
        assert_eq!(w[0], v[2]);
        assert_eq!(w[1], C64::new(0.0, 0.0));
        assert_eq!(w[2], -v[0]);
    }
}
