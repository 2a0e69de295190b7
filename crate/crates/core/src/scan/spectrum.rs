//! Frequency spectra as pushforwards of angular maps.
//!
//! Each angular record deposits its full solid-angle measure
//! dI/dOmega * sin(theta) * w_theta * w_phi into the frequency bin holding
//! its exact line frequency; dividing by the bin width turns deposits into
//! dI/domega. No Jacobian d(omega)/d(theta) is ever formed, so the map and
//! its spectrum agree integral-for-integral by construction.

use crate::channel::SpectralRecord;
use crate::{Error, Result};

use super::grid::ScanGrid;

/// One frequency bin of a spectrum: dI/domega values averaged over the
/// bin, plus how many angular records landed in it.
#[derive(Debug, Clone, Default)]
pub struct SpectrumBin {
    pub lo: f64,
    pub hi: f64,
    pub coherent: f64,
    pub incoherent: f64,
    pub pol: [f64; 2],
    pub samples: usize,
}

/// Binned spectrum of one harmonic (or of the total, j = 0).
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Harmonic number; 0 marks the sum over all harmonics.
    pub j: usize,
    pub bins: Vec<SpectrumBin>,
    /// Zero-sample bins strictly inside the populated range: angular
    /// resolution too coarse for this binning if nonzero.
    pub empty_in_support: usize,
}

/// Per-harmonic spectra plus their total.
#[derive(Debug, Clone)]
pub struct SpectrumSet {
    pub per_j: Vec<Spectrum>,
    pub total: Spectrum,
    /// Records whose line fell outside the frequency axis (0 on a default
    /// axis, which always brackets every line the grid can emit).
    pub dropped: usize,
}

/// Bin the records of an angular map over `grid` into dI/domega spectra.
///
/// `broaden_sigma` (eV), if set, convolves every spectrum with a discrete
/// Gaussian of that width: a presentation-layer detector resolution. The
/// kernel is renormalized per source bin on the axis, so the integral is
/// conserved exactly; `samples` counts stay unbroadened.
pub fn frequency_spectrum(
    grid: &ScanGrid,
    records: &[SpectralRecord],
    broaden_sigma: Option<f64>,
) -> Result<SpectrumSet> {
    if records.len() != grid.total_points() {
        return Err(Error::invalid(
            "records",
            format!(
                "expected {} records for this grid, got {}",
                grid.total_points(),
                records.len()
            ),
        ));
    }
    if let Some(s) = broaden_sigma {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::invalid(
                "broaden_sigma",
                format!("must be finite and positive, got {s:e}"),
            ));
        }
    }

    let edges = grid.omega_edges();
    let bin_width = grid.omega_max() / grid.omega_bins() as f64;
    let empty_bins = || -> Vec<SpectrumBin> {
        (0..grid.omega_bins())
            .map(|i| SpectrumBin {
                lo: edges[i],
                hi: edges[i + 1],
                ..SpectrumBin::default()
            })
            .collect()
    };

    let theta_w = grid.theta_weights();
    let phi_w = grid.phi_weights();
    let n_phi = grid.phis().len();
    let per_j_points = grid.points_per_harmonic();

    let mut per_j: Vec<Vec<SpectrumBin>> = (0..grid.j_max()).map(|_| empty_bins()).collect();
    let mut dropped = 0usize;

    for (idx, rec) in records.iter().enumerate() {
        let jj = idx / per_j_points;
        let it = (idx % per_j_points) / n_phi;
        let ip = idx % n_phi;
        let weight = rec.theta.sin() * theta_w[it] * phi_w[ip];
        match grid.omega_bin(rec.omega) {
            Some(b) => {
                let bin = &mut per_j[jj][b];
                bin.coherent += rec.coherent * weight;
                bin.incoherent += rec.incoherent * weight;
                bin.pol[0] += rec.pol[0] * weight;
                bin.pol[1] += rec.pol[1] * weight;
                bin.samples += 1;
            }
            None => dropped += 1,
        }
    }

    for bins in &mut per_j {
        for bin in bins.iter_mut() {
            bin.coherent /= bin_width;
            bin.incoherent /= bin_width;
            bin.pol[0] /= bin_width;
            bin.pol[1] /= bin_width;
        }
        if let Some(sigma) = broaden_sigma {
            broaden(bins, bin_width, sigma);
        }
    }

    let mut total = empty_bins();
    for bins in &per_j {
        for (t, b) in total.iter_mut().zip(bins) {
            t.coherent += b.coherent;
            t.incoherent += b.incoherent;
            t.pol[0] += b.pol[0];
            t.pol[1] += b.pol[1];
            t.samples += b.samples;
        }
    }

    let per_j = per_j
        .into_iter()
        .enumerate()
        .map(|(jj, bins)| Spectrum {
            j: jj + 1,
            empty_in_support: count_gaps(&bins),
            bins,
        })
        .collect();
    let total = Spectrum {
        j: 0,
        empty_in_support: count_gaps(&total),
        bins: total,
    };
    Ok(SpectrumSet {
        per_j,
        total,
        dropped,
    })
}

/// Zero-sample bins strictly between the first and last populated ones.
fn count_gaps(bins: &[SpectrumBin]) -> usize {
    let first = bins.iter().position(|b| b.samples > 0);
    let last = bins.iter().rposition(|b| b.samples > 0);
    match (first, last) {
        (Some(a), Some(z)) if z > a => bins[a..=z].iter().filter(|b| b.samples == 0).count(),
        _ => 0,
    }
}

/// In-place Gaussian convolution of the intensity fields. The kernel is
/// renormalized per source bin over its in-range reach, so each bin
/// redistributes exactly all of its mass and the integral is conserved.
fn broaden(bins: &mut [SpectrumBin], bin_width: f64, sigma: f64) {
    let reach = (5.0 * sigma / bin_width).ceil() as usize;
    let kernel: Vec<f64> = (0..=2 * reach)
        .map(|k| {
            let x = (k as f64 - reach as f64) * bin_width / sigma;
            (-0.5 * x * x).exp()
        })
        .collect();
    let n = bins.len();
    let smooth = |src: Vec<f64>| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (i, &v) in src.iter().enumerate() {
            let lo = i.saturating_sub(reach);
            let hi = (i + reach).min(n - 1);
            let norm: f64 = (lo..=hi).map(|t| kernel[t + reach - i]).sum();
            for t in lo..=hi {
                out[t] += v * kernel[t + reach - i] / norm;
            }
        }
        out
    };
    let coh = smooth(bins.iter().map(|b| b.coherent).collect());
    let inc = smooth(bins.iter().map(|b| b.incoherent).collect());
    let p0 = smooth(bins.iter().map(|b| b.pol[0]).collect());
    let p1 = smooth(bins.iter().map(|b| b.pol[1]).collect());
    for (i, bin) in bins.iter_mut().enumerate() {
        bin.coherent = coh[i];
        bin.incoherent = inc[i];
        bin.pol = [p0[i], p1[i]];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{entry_coefficients, BeamParams, ChannelModel, Interference};
    use crate::scan::angular_map;

    fn setup() -> (BeamParams, ChannelModel, Vec<crate::C64>) {
        let model = ChannelModel::new(23.0, 1.92, 1.0e9).unwrap();
        let beam = BeamParams::new(1.0e9, 0.5 * model.critical_angle(1.0e9)).unwrap();
        let c = entry_coefficients(&beam, &model).unwrap();
        (beam, model, c)
    }

    #[test]
    fn binning_conserves_the_angular_integral() {
        let (beam, model, c) = setup();
        let grid = ScanGrid::forward_cone(&beam, model.omega(), 3, 25, 8, 60).unwrap();
        let recs = angular_map(&beam, &model, &c, &grid, Interference::Both).unwrap();
        let set = frequency_spectrum(&grid, &recs, None).unwrap();
        assert_eq!(set.dropped, 0);

        let theta_w = grid.theta_weights();
        let phi_w = grid.phi_weights();
        let n_phi = grid.phis().len();
        let per_j = grid.points_per_harmonic();
        let bin_width = grid.omega_max() / grid.omega_bins() as f64;
        for jj in 0..3 {
            let direct: f64 = recs[jj * per_j..(jj + 1) * per_j]
                .iter()
                .enumerate()
                .map(|(i, r)| r.coherent * r.theta.sin() * theta_w[i / n_phi] * phi_w[i % n_phi])
                .sum();
            let binned: f64 = set.per_j[jj]
                .bins
                .iter()
                .map(|b| b.coherent * bin_width)
                .sum();
            assert!(
                (direct - binned).abs() <= 1e-12 * direct.abs().max(1e-300),
                "j = {}",
                jj + 1
            );
        }
    }

    #[test]
    fn total_is_the_sum_of_harmonics() {
        let (beam, model, c) = setup();
        let grid = ScanGrid::forward_cone(&beam, model.omega(), 2, 9, 4, 40).unwrap();
        let recs = angular_map(&beam, &model, &c, &grid, Interference::Both).unwrap();
        let set = frequency_spectrum(&grid, &recs, None).unwrap();
        for (i, t) in set.total.bins.iter().enumerate() {
            let sum: f64 = set.per_j.iter().map(|s| s.bins[i].incoherent).sum();
            assert!((t.incoherent - sum).abs() <= 1e-15 * sum.abs().max(1e-300));
            assert_eq!(t.samples, set.per_j.iter().map(|s| s.bins[i].samples).sum());
        }
    }

    #[test]
    fn line_edge_sits_at_the_forward_doppler_peak() {
        let (beam, model, c) = setup();
        let grid = ScanGrid::forward_cone(&beam, model.omega(), 1, 40, 4, 120).unwrap();
        let recs = angular_map(&beam, &model, &c, &grid, Interference::Both).unwrap();
        let set = frequency_spectrum(&grid, &recs, None).unwrap();
        let top = set.per_j[0]
            .bins
            .iter()
            .rev()
            .find(|b| b.samples > 0)
            .unwrap();
        let fwd = 2.0 * beam.gamma() * beam.gamma() * model.omega();
        let width = grid.omega_max() / 120.0;
        assert!(top.hi >= fwd - width && top.lo <= fwd);
    }

    #[test]
    fn coarse_angular_grids_leave_detectable_gaps() {
        let (beam, model, c) = setup();
        // 3 theta rings -> 3 discrete lines across 100 bins.
        let grid = ScanGrid::forward_cone(&beam, model.omega(), 1, 3, 4, 100).unwrap();
        let recs = angular_map(&beam, &model, &c, &grid, Interference::Both).unwrap();
        let set = frequency_spectrum(&grid, &recs, None).unwrap();
        assert!(set.per_j[0].empty_in_support > 0);
    }

    #[test]
    fn broadening_spreads_but_conserves() {
        let (beam, model, c) = setup();
        let grid = ScanGrid::forward_cone(&beam, model.omega(), 1, 25, 4, 80).unwrap();
        let recs = angular_map(&beam, &model, &c, &grid, Interference::Both).unwrap();
        let sharp = frequency_spectrum(&grid, &recs, None).unwrap();
        let bin_width = grid.omega_max() / 80.0;
        let blurred = frequency_spectrum(&grid, &recs, Some(2.0 * bin_width)).unwrap();
        let tot = |s: &Spectrum| -> f64 { s.bins.iter().map(|b| b.coherent).sum::<f64>() };
        let a = tot(&sharp.per_j[0]);
        let b = tot(&blurred.per_j[0]);
        assert!((a - b).abs() <= 1e-9 * a, "{a} vs {b}");
        let peak_sharp = sharp.per_j[0]
            .bins
            .iter()
            .map(|b| b.coherent)
            .fold(0.0, f64::max);
        let peak_blur = blurred.per_j[0]
            .bins
            .iter()
            .map(|b| b.coherent)
            .fold(0.0, f64::max);
        assert!(peak_blur < peak_sharp);
    }

    #[test]
    fn off_axis_lines_are_counted_not_binned() {
        let (beam, model, c) = setup();
        let grid = ScanGrid::new(vec![0.0, 1.0e-4], vec![0.0], 1, 10, 1.0e5).unwrap();
        let recs = angular_map(&beam, &model, &c, &grid, Interference::Both).unwrap();
        let set = frequency_spectrum(&grid, &recs, None).unwrap();
        assert_eq!(set.dropped, 2);
    }

    #[test]
    fn record_count_mismatch_is_rejected() {
        let (beam, model, c) = setup();
        let grid = ScanGrid::forward_cone(&beam, model.omega(), 1, 5, 4, 10).unwrap();
        let recs = angular_map(&beam, &model, &c, &grid, Interference::Both).unwrap();
        let small = ScanGrid::forward_cone(&beam, model.omega(), 1, 4, 4, 10).unwrap();
        assert!(frequency_spectrum(&small, &recs, None).is_err());
    }
}
