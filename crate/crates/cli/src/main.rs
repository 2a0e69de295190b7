//! chanrad: photon spectra of planar channeled positrons.
//!
//! Three subcommands share one configuration surface: `angular` tabulates
//! the differential intensity over the forward cone, `spectrum` pushes
//! that map onto a frequency axis, and `verify` runs the numerical
//! cross-check suite. Flags override a flat `key = value` config file,
//! and every output embeds the fully resolved configuration.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 failed verification, 5 output I/O error.

mod config;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chanrad_core::channel::entry_coefficients;
use chanrad_core::oracle::run_suite;
use chanrad_core::scan::{angular_map, convergence_report, frequency_spectrum, ScanGrid};
use chanrad_core::C64;

use config::{
    parse_config_file, parse_format, parse_interference, resolve, Mode, RawConfig, Resolved,
};

/// Relative shift of the probe intensity under a refinement knob that
/// gets flagged in the stderr convergence summary.
const CONVERGENCE_TOL: f64 = 1e-3;

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numeric(chanrad_core::Error),
    Verify { failed: usize, total: usize },
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Verify { .. } => 4,
            Failure::Io(_) => 5,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) | Failure::Io(m) => write!(f, "{m}"),
            Failure::Numeric(e) => write!(f, "{e}"),
            Failure::Verify { failed, total } => {
                write!(f, "{failed} of {total} verification checks failed")
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "chanrad",
    version,
    about = "Photon spectra of positrons channeling between crystal planes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Differential intensity over the forward emission cone
    Angular(RunArgs),
    /// Frequency spectra, per harmonic and total
    Spectrum(RunArgs),
    /// Numerical cross-check suite (quadrature, spinor, wave-equation)
    Verify(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` config file; flags override its values
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Beam energy in GeV (required here or in the config file)
    #[arg(long, value_name = "GEV", allow_negative_numbers = true)]
    energy_gev: Option<f64>,

    /// Planar potential depth in eV [default: 23]
    #[arg(long, value_name = "EV", allow_negative_numbers = true)]
    v0_ev: Option<f64>,

    /// Plane spacing in Angstrom [default: 1.92]
    #[arg(long, value_name = "ANGSTROM", allow_negative_numbers = true)]
    dp_angstrom: Option<f64>,

    /// Incidence angle in microradians [default: half the critical angle]
    #[arg(long, value_name = "URAD", allow_negative_numbers = true)]
    theta_in_urad: Option<f64>,

    /// Retained transverse levels [default: every bound level]
    #[arg(long, value_name = "N")]
    n_levels: Option<usize>,

    /// Highest harmonic [default: 5]
    #[arg(long, value_name = "J")]
    j_max: Option<usize>,

    /// Polar grid nodes over the cone [default: 200]
    #[arg(long, value_name = "N")]
    theta_points: Option<usize>,

    /// Azimuthal grid nodes [default: 64]
    #[arg(long, value_name = "N")]
    phi_points: Option<usize>,

    /// Frequency bins for spectra [default: 200]
    #[arg(long, value_name = "N")]
    omega_bins: Option<usize>,

    /// Entry-state treatment: on, off, or both [default: both]
    #[arg(long, value_name = "MODE")]
    interference: Option<String>,

    /// Output format: csv or jsonl [default: csv]
    #[arg(long, value_name = "FMT")]
    format: Option<String>,

    /// Output path [default: stdout]
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Gaussian detector resolution in eV (spectrum only)
    #[arg(long, value_name = "SIGMA", allow_negative_numbers = true)]
    broaden_ev: Option<f64>,

    /// Worker threads [default: all cores]; never affects output bytes
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
}

impl RunArgs {
    fn flag_layer(&self) -> Result<RawConfig, Failure> {
        Ok(RawConfig {
            energy_gev: self.energy_gev,
            v0_ev: self.v0_ev,
            dp_angstrom: self.dp_angstrom,
            theta_in_urad: self.theta_in_urad,
            n_levels: self.n_levels,
            j_max: self.j_max,
            theta_points: self.theta_points,
            phi_points: self.phi_points,
            omega_bins: self.omega_bins,
            interference: self
                .interference
                .as_deref()
                .map(parse_interference)
                .transpose()
                .map_err(Failure::Config)?,
            format: self
                .format
                .as_deref()
                .map(parse_format)
                .transpose()
                .map_err(Failure::Config)?,
            out: self.out.clone(),
            broaden_ev: self.broaden_ev,
        })
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn real_main() -> Result<(), Failure> {
    let cli = Cli::parse();
    let (mode, args) = match &cli.command {
        Command::Angular(a) => (Mode::Angular, a),
        Command::Spectrum(a) => (Mode::Spectrum, a),
        Command::Verify(a) => (Mode::Verify, a),
    };

    let file_layer = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            parse_config_file(&text)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?
        }
        None => RawConfig::default(),
    };
    let resolved = resolve(mode, file_layer.overridden_by(args.flag_layer()?))?;
    for w in &resolved.warnings {
        eprintln!("warning: {w}");
    }

    if let Some(n) = args.threads {
        if n == 0 {
            return Err(Failure::Config("threads: need at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Config(format!("threads: {e}")))?;
    }

    match mode {
        Mode::Angular => run_angular(&resolved),
        Mode::Spectrum => run_spectrum(&resolved),
        Mode::Verify => run_verify(&resolved),
    }
}

/// Refinement probe printed to stderr so tables stay clean.
fn print_convergence(r: &Resolved) -> Result<(), Failure> {
    let report = convergence_report(&r.beam, &r.model, r.config.j_max, CONVERGENCE_TOL)
        .map_err(Failure::Numeric)?;
    eprint!("{report}");
    Ok(())
}

fn scan_inputs(r: &Resolved) -> Result<(Vec<C64>, ScanGrid), Failure> {
    let entry = entry_coefficients(&r.beam, &r.model).map_err(Failure::Numeric)?;
    let grid = ScanGrid::forward_cone(
        &r.beam,
        r.model.omega(),
        r.config.j_max,
        r.config.theta_points,
        r.config.phi_points,
        r.config.omega_bins,
    )
    .map_err(Failure::Numeric)?;
    Ok((entry, grid))
}

fn run_angular(r: &Resolved) -> Result<(), Failure> {
    print_convergence(r)?;
    let (entry, grid) = scan_inputs(r)?;
    let records = angular_map(&r.beam, &r.model, &entry, &grid, r.config.interference)
        .map_err(Failure::Numeric)?;
    let text = output::render_angular(&r.config, &records);
    output::write_output(r.config.out.as_deref(), &text)
}

fn run_spectrum(r: &Resolved) -> Result<(), Failure> {
    print_convergence(r)?;
    let (entry, grid) = scan_inputs(r)?;
    let records = angular_map(&r.beam, &r.model, &entry, &grid, r.config.interference)
        .map_err(Failure::Numeric)?;
    let set = frequency_spectrum(&grid, &records, r.config.broaden_ev).map_err(Failure::Numeric)?;
    if set.dropped > 0 {
        eprintln!(
            "note: {} angular records fell outside the frequency axis",
            set.dropped
        );
    }
    if set.total.empty_in_support > 0 {
        eprintln!(
            "note: {} empty bins inside the populated range; raise theta_points or lower omega_bins",
            set.total.empty_in_support
        );
    }
    let text = output::render_spectrum(&r.config, &set);
    output::write_output(r.config.out.as_deref(), &text)
}

fn run_verify(r: &Resolved) -> Result<(), Failure> {
    let rows = run_suite(&r.beam, &r.model).map_err(Failure::Numeric)?;
    let text = output::render_verify(&r.config, &rows);
    output::write_output(r.config.out.as_deref(), &text)?;
    let failed = rows.iter().filter(|row| !row.passed).count();
    if failed > 0 {
        return Err(Failure::Verify {
            failed,
            total: rows.len(),
        });
    }
    Ok(())
}
