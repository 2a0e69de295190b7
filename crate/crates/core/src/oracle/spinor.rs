//! Explicit spinor-space enumeration of the spin sum.

use crate::C64;

/// (1/2) sum over initial and final spin of |chi'^dag (a + i sigma.d) chi|^2,
/// by building the 2x2 operator from literal Pauli matrices and running all
/// four spinor pairs. The production path reduces this to |a|^2 + d.d*
/// algebraically; this routine never uses that shortcut.
pub fn spinor_enumeration(a: C64, d: &[C64; 3]) -> f64 {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);

    let identity = [[one, zero], [zero, one]];
    let sigma = [
        [[zero, one], [one, zero]],
        [[zero, -i], [i, zero]],
        [[one, zero], [zero, -one]],
    ];

    let mut op = [[zero; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            op[r][c] = a * identity[r][c]
                + i * (d[0] * sigma[0][r][c] + d[1] * sigma[1][r][c] + d[2] * sigma[2][r][c]);
        }
    }

    let basis = [[one, zero], [zero, one]];
    let mut total = 0.0;
    for chi in &basis {
        for chi_prime in &basis {
            let mut amp = zero;
            for r in 0..2 {
                for c in 0..2 {
                    amp += chi_prime[r].conj() * op[r][c] * chi[c];
                }
            }
            total += amp.norm_sqr();
        }
    }
    0.5 * total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::spin_polarization_reduce;
    use rand::{Rng, SeedableRng};

    #[test]
    fn pure_scalar_and_pure_flip_limits() {
        let zero = [C64::new(0.0, 0.0); 3];
        assert!((spinor_enumeration(C64::new(1.0, 0.0), &zero) - 1.0).abs() < 1e-15);
        let dz = [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0)];
        assert!((spinor_enumeration(C64::new(0.0, 0.0), &dz) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cross_terms_cancel_in_the_trace() {
        // a and d wildly out of phase: enumeration must still equal
        // |a|^2 + |d|^2 with no interference remnant.
        let a = C64::new(0.3, -1.7);
        let d = [C64::new(1.1, 0.2), C64::new(-0.4, 0.9), C64::new(0.0, -2.2)];
        let expect = a.norm_sqr() + d.iter().map(|v| v.norm_sqr()).sum::<f64>();
        assert!((spinor_enumeration(a, &d) - expect).abs() < 1e-13 * expect);
    }

    #[test]
    fn enumeration_agrees_with_the_reduced_form_at_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5e_ed_04);
        for _ in 0..200 {
            let mut draw = || C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let a = draw();
            let d = [draw(), draw(), draw()];
            let fast = spin_polarization_reduce(a, &d);
            let slow = spinor_enumeration(a, &d);
            assert!((fast - slow).abs() <= 1e-13 * slow.max(1e-30));
        }
    }
}
