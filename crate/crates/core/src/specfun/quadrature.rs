//! Gauss-Hermite quadrature with weights that survive high order.
//!
//! Nodes are the eigenvalues of the Jacobi matrix of the Hermite
//! recurrence (implicit-shift QL), symmetrized about the origin and
//! polished with two Newton steps on the order-K Hermite function. Weights
//! come from the Christoffel identity W_i = 1 / sum_{k<K} u_k(x_i)^2,
//! which is positive and well conditioned at every order this module
//! admits. Two views are stored:
//!
//! * `scaled_weights`: W_i itself, for integrands that already contain
//!   their Gaussian decay (the natural form here, where every integrand
//!   carries a product of two bound states). Always positive.
//! * `weights`: the classical w_i = W_i exp(-x_i^2), for integrating f
//!   against the measure exp(-x^2) dx. Beyond order ~370 the edge-node
//!   factors exp(-x_i^2) fall below the f64 range and these underflow to
//!   0; the scaled view is the one to use there.

use crate::{Error, Result, C64};

use super::hermite::HermiteWalker;

/// Largest admissible rule order.
pub const MAX_QUADRATURE_ORDER: usize = 1024;

/// A fixed-order Gauss-Hermite rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    scaled_weights: Vec<f64>,
}

impl QuadratureRule {
    /// Build the rule of the given order (1 ..= [`MAX_QUADRATURE_ORDER`]).
    ///
    /// The rule integrates polynomials of degree <= 2*order - 1 exactly
    /// against exp(-x^2). Construction fails if the nodes do not separate
    /// or any weight comes out non-finite; neither happens for admissible
    /// orders.
    // The negated node-separation compare also rejects NaN eigenvalues.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn gauss_hermite(order: usize) -> Result<Self> {
        if order == 0 || order > MAX_QUADRATURE_ORDER {
            return Err(Error::invalid(
                "order",
                format!("must be in 1..={MAX_QUADRATURE_ORDER}, got {order}"),
            ));
        }
        let n = order;
        let mut d = vec![0.0; n];
        let mut e: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
        tridiagonal_eigenvalues(&mut d, &mut e)?;
        d.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));

        // The spectrum is symmetric about 0; enforce that exactly.
        for i in 0..n / 2 {
            let a = 0.5 * (d[i] - d[n - 1 - i]);
            d[i] = a;
            d[n - 1 - i] = -a;
        }
        if n % 2 == 1 {
            d[n / 2] = 0.0;
        }

        // Two Newton steps on u_n pin each positive node to the true zero;
        // mirroring keeps the pair structure exact.
        for i in (n / 2 + n % 2)..n {
            let mut x = d[i];
            for _ in 0..2 {
                let mut w = HermiteWalker::start(x);
                for _ in 0..n {
                    w.step();
                }
                x -= w.newton_ratio();
            }
            d[i] = x;
            d[n - 1 - i] = -x;
        }

        for i in 1..n {
            if !(d[i] > d[i - 1]) {
                return Err(Error::Numeric(format!(
                    "gauss-hermite nodes failed to separate at order {order}"
                )));
            }
        }

        let mut weights = Vec::with_capacity(n);
        let mut scaled_weights = Vec::with_capacity(n);
        for &x in &d {
            let mut w = HermiteWalker::start(x);
            for _ in 0..n.saturating_sub(1) {
                w.step();
            }
            let big_w = 1.0 / w.sum_sq;
            if !(big_w.is_finite() && big_w > 0.0) {
                return Err(Error::Numeric(format!(
                    "gauss-hermite weight degenerated at order {order}, node {x:e}"
                )));
            }
            scaled_weights.push(big_w);
            weights.push(big_w * (-x * x).exp());
        }

        Ok(QuadratureRule {
            order,
            nodes: d,
            weights,
            scaled_weights,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Nodes in strictly increasing order, symmetric about 0.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Classical weights against the measure exp(-x^2) dx. May underflow
    /// to 0 at edge nodes for orders beyond ~370.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Christoffel weights W_i = w_i exp(x_i^2); positive at every
    /// admissible order. Pair with integrands that carry their own
    /// Gaussian decay.
    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }

    /// Integral over the real line of an integrand that decays at least
    /// like exp(-x^2) on its own (no implicit measure).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.scaled_weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Complex-valued counterpart of [`integrate`](Self::integrate).
    pub fn integrate_complex<F: Fn(f64) -> C64>(&self, f: F) -> C64 {
        self.nodes
            .iter()
            .zip(&self.scaled_weights)
            .map(|(&x, &w)| f(x) * w)
            .fold(C64::new(0.0, 0.0), |acc, t| acc + t)
    }
}

/// Implicit-shift QL eigenvalues of a symmetric tridiagonal matrix.
/// `d` holds the diagonal; `e` the n-1 subdiagonal entries. Eigenvalues
/// land in `d`, unsorted.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut Vec<f64>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::Numeric(
                    "tridiagonal QL iteration failed to converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0;
            let mut rotations_underflowed = false;
            let mut i = m;
            while i > l {
                let k = i - 1;
                let f = s * e[k];
                let b = c * e[k];
                r = f.hypot(g);
                e[k + 1] = r;
                if r == 0.0 {
                    d[k + 1] -= p;
                    e[m] = 0.0;
                    rotations_underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[k + 1] - p;
                r = (d[k] - g) * s + 2.0 * c * b;
                p = s * r;
                d[k + 1] = g + p;
                g = c * r - b;
                i -= 1;
            }
            if rotations_underflowed {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    e.pop();
    Ok(())
}
