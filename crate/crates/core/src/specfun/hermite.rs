//! Orthonormal Hermite functions by exponent-windowed recurrence.
//!
//! u_0(xi) = pi^{-1/4} exp(-xi^2/2) already underflows f64 for |xi| > 38.6,
//! yet u_n(xi) climbs back to order one once n reaches xi^2/2. The walker
//! below carries the pair (u_{n-1}, u_n) times an explicit power of
//! 2^{996}; rescaling by exact powers of two keeps every step free of
//! rounding, so the recurrence is usable at any point of the (n, xi) plane
//! and the true value is recovered (or flushed to an honest zero) at the
//! end.

/// Rescale quantum: stored values are true values times 2^{-996*shift}.
const WINDOW_EXP: i32 = 996;
/// Magnitude that triggers an up-rescale; half the window, so one rescale
/// always suffices.
const WINDOW_LIMIT: f64 = 8.179069375972309e149; // 2^498

const PI_MINUS_QUARTER: f64 = 0.751_125_544_464_942_5; // pi^{-1/4}

/// Pair (u_{n-1}, u_n) scaled by 2^{-996*shift}, plus the running sum of
/// squares of the true values u_0^2 + ... + u_n^2.
pub(crate) struct HermiteWalker {
    pub lo: f64,
    pub hi: f64,
    pub shift: i32,
    pub sum_sq: f64,
    n: usize,
    xi: f64,
}

impl HermiteWalker {
    /// Walker positioned at n = 0.
    pub(crate) fn start(xi: f64) -> Self {
        let half = 0.5 * xi * xi;
        let (hi, shift) = if half < 700.0 {
            (PI_MINUS_QUARTER * (-half).exp(), 0)
        } else {
            // log2 of u_0, split into window multiples plus a representable rest.
            let log2_u0 = (-half - 0.25 * std::f64::consts::PI.ln()) * std::f64::consts::LOG2_E;
            let shift = (log2_u0 / f64::from(WINDOW_EXP)).round() as i32;
            (
                (log2_u0 - f64::from(WINDOW_EXP) * f64::from(shift)).exp2(),
                shift,
            )
        };
        let u0 = unscale(hi, shift);
        HermiteWalker {
            lo: 0.0,
            hi,
            shift,
            sum_sq: u0 * u0,
            n: 0,
            xi,
        }
    }

    /// Advance to n+1 via u_{n+1} = xi sqrt(2/(n+1)) u_n - sqrt(n/(n+1)) u_{n-1}.
    pub(crate) fn step(&mut self) {
        let np1 = (self.n + 1) as f64;
        let next = self.xi * (2.0 / np1).sqrt() * self.hi - (self.n as f64 / np1).sqrt() * self.lo;
        self.lo = self.hi;
        self.hi = next;
        self.n += 1;
        if self.hi.abs() > WINDOW_LIMIT || self.lo.abs() > WINDOW_LIMIT {
            let down = 0.5f64.powi(WINDOW_EXP); // 2^{-996}, exact
            self.lo *= down;
            self.hi *= down;
            self.shift += 1;
        }
        let u = self.value();
        self.sum_sq += u * u;
    }

    /// True u_n at the current index (0 if below the f64 range).
    pub(crate) fn value(&self) -> f64 {
        unscale(self.hi, self.shift)
    }

    /// Ratio u_n / u_n' at the current index; the common scale cancels.
    /// u_n'(xi) = sqrt(2n) u_{n-1}(xi) - xi u_n(xi).
    pub(crate) fn newton_ratio(&self) -> f64 {
        let deriv = (2.0 * self.n as f64).sqrt() * self.lo - self.xi * self.hi;
        self.hi / deriv
    }
}

/// Undo the window: v * 2^{996*shift}, stepped so intermediates never
/// overflow when the true value is representable.
fn unscale(v: f64, shift: i32) -> f64 {
    if shift == 0 || v == 0.0 {
        return v;
    }
    let factor = 2.0f64.powi(WINDOW_EXP * shift.signum());
    let mut out = v;
    for _ in 0..shift.abs() {
        out *= factor;
    }
    out
}

/// Values u_0(xi) ..= u_{n_max}(xi) of the orthonormal Hermite functions.
///
/// Entries whose true magnitude falls below the f64 range come back as 0.
/// The recurrence itself neither overflows nor loses relative accuracy,
/// whatever the level index or argument.
pub fn hermite_functions(xi: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut w = HermiteWalker::start(xi);
    out.push(w.value());
    for _ in 0..n_max {
        w.step();
        out.push(w.value());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, rel: f64) {
        let scale = b.abs().max(1e-300);
        assert!(
            (a - b).abs() <= rel * scale,
            "{a:e} vs {b:e} (rel {:e})",
            (a - b).abs() / scale
        );
    }

    #[test]
    fn ground_state_at_origin_is_quartic_root_of_pi() {
        let u = hermite_functions(0.0, 0);
        assert_close(u[0], 0.751_125_544_464_942_5, 1e-15);
    }

    #[test]
    fn odd_levels_vanish_at_origin() {
        let u = hermite_functions(0.0, 11);
        for n in (1..=11).step_by(2) {
            assert_eq!(u[n], 0.0);
        }
    }

    #[test]
    fn explicit_h7_polynomial_agrees() {
        // H_7(x) = 128x^7 - 1344x^5 + 3360x^3 - 1680x.
        let xi = 1.3;
        let h7 = ((128.0 * xi * xi - 1344.0) * xi * xi + 3360.0) * xi * xi * xi - 1680.0 * xi;
        let norm = (2.0f64.powi(7) * 5040.0 * std::f64::consts::PI.sqrt()).sqrt();
        let expect = h7 / norm * (-0.5 * xi * xi).exp();
        let u = hermite_functions(xi, 7);
        assert_close(u[7], expect, 1e-13);
    }

    #[test]
    fn deep_tail_recovers_through_the_window() {
        // u_0 underflows at xi = 60 (xi^2/2 = 1800), but u_n returns to the
        // f64 range once n is comparable to xi^2/2 and the walker must hand
        // back finite, nonzero values there.
        let u = hermite_functions(60.0, 2200);
        assert_eq!(u[0], 0.0);
        assert!(u[2100] != 0.0 && u[2100].is_finite());
        // Envelope of the oscillatory region stays order n^{-1/4}.
        assert!(u[2100].abs() < 1.0);
    }

    #[test]
    fn stays_finite_at_any_sign_and_scale() {
        for &xi in &[-40.0, -12.5, 0.0, 3.0, 37.9, 40.0] {
            for &n in &[0usize, 1, 7, 64, 512] {
                let u = hermite_functions(xi, n);
                assert!(u.iter().all(|v| v.is_finite()), "xi={xi} n={n}");
            }
        }
    }

    #[test]
    fn parity_alternates_with_level() {
        let xi = 2.371;
        let plus = hermite_functions(xi, 20);
        let minus = hermite_functions(-xi, 20);
        for n in 0..=20 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_close(minus[n], sign * plus[n], 1e-14);
        }
    }
}
