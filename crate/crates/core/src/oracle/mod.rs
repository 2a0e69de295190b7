//! Independent slow-path checks of every fast-path quantity.
//!
//! Each oracle recomputes a production result by a route that shares as
//! little code as possible with it: quadrature sums against closed forms,
//! explicit 2x2 spinor algebra against the reduced trace, a discretized
//! wave equation against the eigenfunction recurrence. [`run_suite`]
//! packages them into pass/fail rows for the CLI and the test suite.

mod overlaps;
mod spinor;
mod wave;

pub use overlaps::{quadrature_i1_i2, recommended_order, QuadratureOverlaps};
pub use spinor::spinor_enumeration;
pub use wave::{plane_wave_deviation, schroedinger_residual, schroedinger_residual_at};

use std::fmt;

use rand::{Rng, SeedableRng};

use crate::channel::{spin_polarization_reduce, BeamParams, ChannelModel};
use crate::specfun::{derivative_i2, overlap_i1, OscillatorBasis, QuadratureRule};
use crate::{Result, C64};

/// Outcome of one oracle row.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub name: &'static str,
    /// Worst absolute discrepancy encountered (units depend on the row).
    pub max_abs: f64,
    /// Worst relative discrepancy where the reference was resolvable.
    pub max_rel: f64,
    /// The bound `max_rel` is held to.
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<44} max_abs {:9.2e}  max_rel {:9.2e}  tol {:7.1e}  {}",
            self.name,
            self.max_abs,
            self.max_rel,
            self.tolerance,
            if self.passed { "pass" } else { "FAIL" }
        )
    }
}

/// Relative floor below which a quadrature reference stops resolving a
/// closed-form value and the comparison falls back to an absolute bound.
const RESOLVABLE: f64 = 1e-6;
/// Absolute-noise floor of a well-conditioned quadrature sum, per unit of
/// natural magnitude.
const ABS_FLOOR: f64 = 5e-13;
/// Relative agreement demanded where the reference is resolvable.
const REL_TOL: f64 = 1e-8;

struct HybridTally {
    max_abs: f64,
    max_rel: f64,
}

impl HybridTally {
    fn new() -> Self {
        HybridTally {
            max_abs: 0.0,
            max_rel: 0.0,
        }
    }

    /// Compare against a reference whose natural magnitude is `unit`
    /// (1 for I1, sqrt(E*Omega) for I2).
    fn record(&mut self, got: C64, reference: C64, unit: f64) {
        let err = (got - reference).norm();
        if reference.norm() > RESOLVABLE * unit {
            self.max_rel = self.max_rel.max(err / reference.norm());
        } else {
            self.max_abs = self.max_abs.max(err / unit);
        }
    }

    fn report(&self, name: &'static str) -> OracleReport {
        OracleReport {
            name,
            max_abs: self.max_abs,
            max_rel: self.max_rel,
            tolerance: REL_TOL,
            passed: self.max_rel <= REL_TOL && self.max_abs <= ABS_FLOOR,
        }
    }
}

/// Run every oracle against the configured beam and channel. Deterministic
/// (seeded draws); a few seconds of work at reference settings.
pub fn run_suite(beam: &BeamParams, model: &ChannelModel) -> Result<Vec<OracleReport>> {
    let mut rows = Vec::new();
    let scale = beam.energy() * model.omega();
    let basis = OscillatorBasis::new(scale, 52)?;
    let rule = QuadratureRule::gauss_hermite(1024)?;

    // Rule self-consistency: doubling the order must leave a bound-state
    // overlap fixed to near machine precision.
    {
        let half = QuadratureRule::gauss_hermite(512)?;
        let (a1, a2) = quadrature_i1_i2(&basis, 40, 37, 3.0 * basis.sqrt_scale(), &half)?;
        let (b1, b2) = quadrature_i1_i2(&basis, 40, 37, 3.0 * basis.sqrt_scale(), &rule)?;
        let rel = ((a1 - b1).norm() / b1.norm().max(1e-300))
            .max((a2 - b2).norm() / b2.norm().max(1e-300));
        rows.push(OracleReport {
            name: "gauss-hermite order doubling",
            max_abs: (a1 - b1).norm().max((a2 - b2).norm()),
            max_rel: rel,
            tolerance: 1e-12,
            passed: rel <= 1e-12,
        });
    }

    // Closed-form overlaps against raw quadrature over a sweep of level
    // pairs and kicks, deep into the classically forbidden range.
    {
        let mut i1 = HybridTally::new();
        let mut i2 = HybridTally::new();
        let qs = [-15.0, -7.0, -2.0, -0.5, 0.0, 0.5, 2.0, 7.0, 15.0];
        for &n in &[0usize, 2, 5, 13, 34, 47] {
            for &j in &[0usize, 1, 3] {
                if j > n {
                    continue;
                }
                let m = n - j;
                for &q in &qs {
                    let k_x = q * basis.sqrt_scale();
                    let (q1, q2) = quadrature_i1_i2(&basis, n, m, k_x, &rule)?;
                    i1.record(overlap_i1(&basis, n, m, k_x)?, q1, 1.0);
                    i2.record(derivative_i2(&basis, n, m, k_x)?, q2, basis.sqrt_scale());
                }
            }
        }
        rows.push(i1.report("displacement overlap vs quadrature"));
        rows.push(i2.report("derivative overlap vs quadrature"));
    }

    // Reduced spin trace against explicit enumeration.
    {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_ab1e);
        let mut worst_rel = 0.0f64;
        let mut worst_abs = 0.0f64;
        for _ in 0..1000 {
            let mut draw = || C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let a = draw();
            let d = [draw(), draw(), draw()];
            let fast = spin_polarization_reduce(a, &d);
            let slow = spinor_enumeration(a, &d);
            let err = (fast - slow).abs();
            worst_abs = worst_abs.max(err);
            worst_rel = worst_rel.max(err / slow.max(1e-30));
        }
        rows.push(OracleReport {
            name: "spin reduction vs spinor enumeration",
            max_abs: worst_abs,
            max_rel: worst_rel,
            tolerance: 1e-12,
            passed: worst_rel <= 1e-12,
        });
    }

    // Eigenfunctions against the discretized wave equation.
    {
        let mut worst = 0.0f64;
        for &n in &[0usize, 5, 10, 20] {
            worst = worst.max(schroedinger_residual(
                beam.energy(),
                model.omega(),
                n,
                1e-3,
            )?);
        }
        rows.push(OracleReport {
            name: "wave equation residual (n <= 20)",
            max_abs: worst,
            max_rel: worst,
            tolerance: 1e-5,
            passed: worst <= 1e-5,
        });
    }

    // Entry-state partial sums against the plane wave: the sup error must
    // sit under the 3/sqrt(pi N) envelope and shrink with N.
    {
        let p_tilde = beam.p_x() / scale.sqrt();
        let mut worst_ratio = 0.0f64;
        let mut devs = Vec::new();
        for &n in &[40usize, 160, 512] {
            let dev = plane_wave_deviation(p_tilde, n)?;
            let envelope = 3.0 / (std::f64::consts::PI * n as f64).sqrt();
            worst_ratio = worst_ratio.max(dev / envelope);
            devs.push(dev);
        }
        let shrinking = devs.windows(2).all(|w| w[1] < w[0]);
        rows.push(OracleReport {
            name: "plane-wave reconstruction envelope",
            max_abs: *devs.last().expect("nonempty"),
            max_rel: worst_ratio,
            tolerance: 1.0,
            passed: worst_ratio <= 1.0 && shrinking,
        });
    }

    Ok(rows)
}
