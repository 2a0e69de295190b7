//! Brute-force quadrature route to the overlap integrals.
//!
//! Everything here recomputes what `specfun::overlap` gets from closed
//! forms, using nothing but pointwise eigenfunction values under a
//! Gauss-Hermite rule. The derivative enters through
//! u_n'(xi) = sqrt(2n) u_{n-1}(xi) - xi u_n(xi), a different identity from
//! the integral-level ladder the production path uses, so the two routes
//! share no algebra beyond the recurrence for u_n itself.

use crate::specfun::{
    check_family_request, hermite_functions, OscillatorBasis, OverlapFamilies, OverlapSource,
    QuadratureRule, MAX_QUADRATURE_ORDER,
};
use crate::{Error, Result, C64};

/// Rule order that resolves the pair (n, m) at dimensionless kick q:
/// enough nodes for the polynomial degree plus the oscillation, capped at
/// the largest admissible order (empirically converged well before it).
pub fn recommended_order(n_hi: usize, q: f64) -> usize {
    let oscillation = (q * q).abs().ceil() as usize;
    (4 * n_hi + 2 * oscillation + 50).min(MAX_QUADRATURE_ORDER)
}

/// I1(n, m; k_x) and I2(n, m; k_x) by direct quadrature.
///
/// Rejects rules coarser than [`recommended_order`] so a sloppy
/// cross-check cannot silently pass.
pub fn quadrature_i1_i2(
    basis: &OscillatorBasis,
    n: usize,
    m: usize,
    k_x: f64,
    rule: &QuadratureRule,
) -> Result<(C64, C64)> {
    if n + 1 > basis.n_max() || m > basis.n_max() {
        return Err(Error::invalid(
            "n",
            format!(
                "pair ({n}, {m}) with its ladder neighbor exceeds the basis (n_max = {})",
                basis.n_max()
            ),
        ));
    }
    let q = k_x / basis.sqrt_scale();
    let need = recommended_order(n.max(m), q);
    if rule.order() < need {
        return Err(Error::invalid(
            "rule",
            format!(
                "order {} too coarse for pair ({n}, {m}) at q = {q:e}; need {need}",
                rule.order()
            ),
        ));
    }

    let mut i1 = C64::new(0.0, 0.0);
    let mut i2 = C64::new(0.0, 0.0);
    let top = n + 1;
    for (&xi, &w) in rule.nodes().iter().zip(rule.scaled_weights()) {
        let u = hermite_functions(xi, top);
        let phase = C64::new(0.0, -q * xi).exp();
        let du = if n == 0 {
            -xi * u[0]
        } else {
            (2.0 * n as f64).sqrt() * u[n - 1] - xi * u[n]
        };
        i1 += phase * (w * u[n] * u[m]);
        i2 += phase * (w * du * u[m]);
    }
    Ok((i1, i2 * basis.sqrt_scale()))
}

/// Overlap families assembled entirely from quadrature sums; drop-in
/// replacement for the closed-form source in convergence probes.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOverlaps {
    pub order: usize,
}

impl OverlapSource for QuadratureOverlaps {
    fn families(
        &self,
        basis: &OscillatorBasis,
        j: usize,
        k_x: f64,
        n_top: usize,
    ) -> Result<OverlapFamilies> {
        check_family_request(basis, j, k_x, n_top)?;
        let q = k_x / basis.sqrt_scale();
        if self.order < recommended_order(n_top + 1, q) {
            return Err(Error::invalid(
                "order",
                format!(
                    "{} too coarse for levels through {} at q = {q:e}",
                    self.order,
                    n_top + 1
                ),
            ));
        }
        let rule = QuadratureRule::gauss_hermite(self.order)?;
        let k_count = n_top - j + 1;
        let zero = C64::new(0.0, 0.0);
        let mut mid = vec![zero; k_count];
        let mut lower = vec![zero; k_count];
        let mut upper = vec![zero; k_count];
        for (&xi, &w) in rule.nodes().iter().zip(rule.scaled_weights()) {
            let u = hermite_functions(xi, n_top + 1);
            let phase = C64::new(0.0, -q * xi).exp();
            for k in 0..k_count {
                let n = j + k;
                let base = phase * (w * u[n - j]);
                mid[k] += base * u[n];
                lower[k] += base * u[n - 1];
                upper[k] += base * u[n + 1];
            }
        }
        OverlapFamilies::from_parts(j, n_top, basis.sqrt_scale(), mid, lower, upper)
    }
}
