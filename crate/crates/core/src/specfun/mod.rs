//! Special functions for the transverse oscillator problem.
//!
//! The building blocks are the orthonormal Hermite functions
//! u_n(xi) = (2^n n! sqrt(pi))^{-1/2} H_n(xi) exp(-xi^2/2), evaluated by
//! recurrence with power-of-two exponent windowing so they stay finite and
//! accurate at any level index and argument. On top of them sit the scaled
//! oscillator eigenbasis, Gauss-Hermite quadrature rules with well-behaved
//! weights at high order, and closed-form photon-kick overlap integrals.

mod basis;
mod hermite;
mod overlap;
mod quadrature;

pub use basis::{OscillatorBasis, HARD_LEVEL_CAP};
pub use hermite::hermite_functions;
pub(crate) use overlap::check_family_request;
pub use overlap::{derivative_i2, overlap_i1, ClosedFormOverlaps, OverlapFamilies, OverlapSource};
pub use quadrature::{QuadratureRule, MAX_QUADRATURE_ORDER};
