//! Public-API integration: the full beam -> model -> map -> spectrum
//! pipeline, and the closed-form overlaps swapped against the quadrature
//! source end to end.

use chanrad_core::channel::{
    entry_coefficients, harmonic_intensity, harmonic_intensity_with, BeamParams, ChannelModel,
    EmissionDirection, Interference,
};
use chanrad_core::oracle::{run_suite, QuadratureOverlaps};
use chanrad_core::scan::{angular_map, frequency_spectrum, ScanGrid};

const V0_EV: f64 = 23.0;
const DP_ANGSTROM: f64 = 1.92;
const ENERGY_EV: f64 = 1.0e9;

fn setup() -> (BeamParams, ChannelModel) {
    let model = ChannelModel::new(V0_EV, DP_ANGSTROM, ENERGY_EV).unwrap();
    let beam = BeamParams::new(ENERGY_EV, 0.5 * model.critical_angle(ENERGY_EV)).unwrap();
    (beam, model)
}

#[test]
fn map_and_spectrum_stay_finite_and_consistent() {
    let (beam, model) = setup();
    let entry = entry_coefficients(&beam, &model).unwrap();
    let grid = ScanGrid::forward_cone(&beam, model.omega(), 3, 24, 12, 40).unwrap();
    let records = angular_map(&beam, &model, &entry, &grid, Interference::Both).unwrap();
    assert_eq!(records.len(), 3 * 24 * 12);
    for r in &records {
        assert!(r.coherent.is_finite() && r.coherent >= 0.0);
        assert!(r.incoherent.is_finite() && r.incoherent >= 0.0);
    }

    let set = frequency_spectrum(&grid, &records, None).unwrap();
    assert_eq!(set.dropped, 0, "default axis brackets every line");
    assert_eq!(set.per_j.len(), 3);
    assert_eq!(set.total.j, 0);

    // The total is the bin-wise sum of the harmonics.
    for (b, bin) in set.total.bins.iter().enumerate() {
        let sum: f64 = set.per_j.iter().map(|s| s.bins[b].coherent).sum();
        assert!((bin.coherent - sum).abs() <= 1e-12 * sum.abs().max(1e-300));
    }
}

#[test]
fn quadrature_source_reproduces_the_closed_form_intensities() {
    let (beam, model) = setup();
    let entry = entry_coefficients(&beam, &model).unwrap();
    let source = QuadratureOverlaps { order: 512 };
    let g = beam.gamma();
    for (theta, phi, j) in [
        (0.0, 0.0, 1),
        (0.8 / g, 1.1, 1),
        (1.9 / g, 4.0, 2),
        (3.5 / g, 2.3, 3),
    ] {
        let dir = EmissionDirection::new(theta, phi).unwrap();
        let fast = harmonic_intensity(&beam, &model, &entry, &dir, j, Interference::Both).unwrap();
        let slow =
            harmonic_intensity_with(&beam, &model, &entry, &dir, j, Interference::Both, &source)
                .unwrap();
        for (a, b) in [
            (fast.coherent, slow.coherent),
            (fast.incoherent, slow.incoherent),
            (fast.pol[0], slow.pol[0]),
            (fast.pol[1], slow.pol[1]),
        ] {
            let rel = (a - b).abs() / a.abs().max(1e-300);
            assert!(
                rel <= 1e-8 || (a - b).abs() < 1e-18,
                "j = {j}, theta = {theta:.2e}: {a:.12e} vs {b:.12e} (rel {rel:.2e})"
            );
        }
    }
}

#[test]
fn verification_suite_passes_through_the_public_api() {
    let (beam, model) = setup();
    let rows = run_suite(&beam, &model).unwrap();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        assert!(row.passed, "{row}");
    }
}
