//! Tabular rendering: CSV with a commented config header, or JSON lines
//! with the config as the first object. Both embed the resolved config so
//! any table is reproducible from its own bytes.

use std::io::Write;
use std::path::Path;

use chanrad_core::channel::SpectralRecord;
use chanrad_core::oracle::OracleReport;
use chanrad_core::scan::SpectrumSet;
use serde::Serialize;

use crate::config::{interference_name, OutputFormat, RunConfig};
use crate::Failure;

pub const ANGULAR_HEADER: &str =
    "j,theta_rad,phi_rad,omega_eV,dI_coherent,dI_incoherent,dI_pol1,dI_pol2";
pub const SPECTRUM_HEADER: &str =
    "j,omega_lo_eV,omega_hi_eV,dIdw_coherent,dIdw_incoherent,dIdw_pol1,dIdw_pol2,samples";

/// Field order mirrors the echo order; serde keeps declaration order.
#[derive(Serialize)]
struct ConfigEcho<'a> {
    mode: &'a str,
    energy_gev: f64,
    v0_ev: f64,
    dp_angstrom: f64,
    theta_in_urad: f64,
    n_levels: usize,
    j_max: usize,
    theta_points: usize,
    phi_points: usize,
    omega_bins: usize,
    interference: &'a str,
    broaden_ev: Option<f64>,
    format: &'a str,
}

#[derive(Serialize)]
struct AngularRow {
    j: usize,
    theta_rad: f64,
    phi_rad: f64,
    #[serde(rename = "omega_eV")]
    omega_ev: f64,
    #[serde(rename = "dI_coherent")]
    di_coherent: f64,
    #[serde(rename = "dI_incoherent")]
    di_incoherent: f64,
    #[serde(rename = "dI_pol1")]
    di_pol1: f64,
    #[serde(rename = "dI_pol2")]
    di_pol2: f64,
}

#[derive(Serialize)]
struct SpectrumRow {
    j: usize,
    #[serde(rename = "omega_lo_eV")]
    omega_lo_ev: f64,
    #[serde(rename = "omega_hi_eV")]
    omega_hi_ev: f64,
    #[serde(rename = "dIdw_coherent")]
    didw_coherent: f64,
    #[serde(rename = "dIdw_incoherent")]
    didw_incoherent: f64,
    #[serde(rename = "dIdw_pol1")]
    didw_pol1: f64,
    #[serde(rename = "dIdw_pol2")]
    didw_pol2: f64,
    samples: usize,
}

fn echo_comment_lines(cfg: &RunConfig, text: &mut String) {
    for (key, value) in cfg.echo_pairs() {
        text.push_str(&format!("# {key} = {value}\n"));
    }
}

fn config_json_line(cfg: &RunConfig) -> String {
    let echo = ConfigEcho {
        mode: cfg.mode.name(),
        energy_gev: cfg.energy_gev,
        v0_ev: cfg.v0_ev,
        dp_angstrom: cfg.dp_angstrom,
        theta_in_urad: cfg.theta_in_urad,
        n_levels: cfg.n_levels,
        j_max: cfg.j_max,
        theta_points: cfg.theta_points,
        phi_points: cfg.phi_points,
        omega_bins: cfg.omega_bins,
        interference: interference_name(cfg.interference),
        broaden_ev: cfg.broaden_ev,
        format: cfg.format.name(),
    };
    format!(
        "{{\"config\":{}}}\n",
        serde_json::to_string(&echo).expect("config serialization cannot fail")
    )
}

pub fn render_angular(cfg: &RunConfig, records: &[SpectralRecord]) -> String {
    assert!(!records.is_empty(), "a scan grid always has points");
    let mut text = String::new();
    match cfg.format {
        OutputFormat::Csv => {
            echo_comment_lines(cfg, &mut text);
            text.push_str(ANGULAR_HEADER);
            text.push('\n');
            for r in records {
                text.push_str(&format!(
                    "{},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}\n",
                    r.j, r.theta, r.phi, r.omega, r.coherent, r.incoherent, r.pol[0], r.pol[1]
                ));
            }
        }
        OutputFormat::Jsonl => {
            text.push_str(&config_json_line(cfg));
            for r in records {
                let row = AngularRow {
                    j: r.j,
                    theta_rad: r.theta,
                    phi_rad: r.phi,
                    omega_ev: r.omega,
                    di_coherent: r.coherent,
                    di_incoherent: r.incoherent,
                    di_pol1: r.pol[0],
                    di_pol2: r.pol[1],
                };
                text.push_str(&serde_json::to_string(&row).expect("finite floats"));
                text.push('\n');
            }
        }
    }
    text
}

/// Harmonics in ascending j, then the total as j = 0.
pub fn render_spectrum(cfg: &RunConfig, set: &SpectrumSet) -> String {
    let spectra = set.per_j.iter().chain(std::iter::once(&set.total));
    let mut text = String::new();
    match cfg.format {
        OutputFormat::Csv => {
            echo_comment_lines(cfg, &mut text);
            text.push_str(SPECTRUM_HEADER);
            text.push('\n');
            for s in spectra {
                for b in &s.bins {
                    text.push_str(&format!(
                        "{},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{}\n",
                        s.j, b.lo, b.hi, b.coherent, b.incoherent, b.pol[0], b.pol[1], b.samples
                    ));
                }
            }
        }
        OutputFormat::Jsonl => {
            text.push_str(&config_json_line(cfg));
            for s in spectra {
                for b in &s.bins {
                    let row = SpectrumRow {
                        j: s.j,
                        omega_lo_ev: b.lo,
                        omega_hi_ev: b.hi,
                        didw_coherent: b.coherent,
                        didw_incoherent: b.incoherent,
                        didw_pol1: b.pol[0],
                        didw_pol2: b.pol[1],
                        samples: b.samples,
                    };
                    text.push_str(&serde_json::to_string(&row).expect("finite floats"));
                    text.push('\n');
                }
            }
        }
    }
    text
}

/// Verification report: config header, one line per check, one summary.
pub fn render_verify(cfg: &RunConfig, rows: &[OracleReport]) -> String {
    let mut text = String::new();
    echo_comment_lines(cfg, &mut text);
    for row in rows {
        text.push_str(&format!("{row}\n"));
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        text.push_str(&format!("all {} checks passed\n", rows.len()));
    } else {
        text.push_str(&format!("{failed} of {} checks FAILED\n", rows.len()));
    }
    text
}

pub fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}
