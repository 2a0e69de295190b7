//! Configuration: flag/file merging, defaults, validation, and the
//! resolved-config echo embedded in every output.
//!
//! User-facing units are eV, Angstrom, and microradians; conversion to the
//! internal natural units happens exactly once, here.

use std::collections::HashSet;
use std::path::PathBuf;

use chanrad_core::channel::{BeamParams, ChannelModel, Interference};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Angular,
    Spectrum,
    Verify,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Angular => "angular",
            Mode::Spectrum => "spectrum",
            Mode::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Jsonl => "jsonl",
        }
    }
}

pub fn interference_name(i: Interference) -> &'static str {
    match i {
        Interference::On => "on",
        Interference::Off => "off",
        Interference::Both => "both",
    }
}

/// One partially specified configuration layer. The file produces one,
/// the flags produce another, and flags override the file field-wise.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub energy_gev: Option<f64>,
    pub v0_ev: Option<f64>,
    pub dp_angstrom: Option<f64>,
    pub theta_in_urad: Option<f64>,
    pub n_levels: Option<usize>,
    pub j_max: Option<usize>,
    pub theta_points: Option<usize>,
    pub phi_points: Option<usize>,
    pub omega_bins: Option<usize>,
    pub interference: Option<Interference>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub broaden_ev: Option<f64>,
}

impl RawConfig {
    /// This layer with every set field of `over` replacing its own.
    pub fn overridden_by(mut self, over: RawConfig) -> RawConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(
            energy_gev,
            v0_ev,
            dp_angstrom,
            theta_in_urad,
            n_levels,
            j_max,
            theta_points,
            phi_points,
            omega_bins,
            interference,
            format,
            out,
            broaden_ev
        );
        self
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "energy_gev" => self.energy_gev = Some(parse_f64(key, value)?),
            "v0_ev" => self.v0_ev = Some(parse_f64(key, value)?),
            "dp_angstrom" => self.dp_angstrom = Some(parse_f64(key, value)?),
            "theta_in_urad" => self.theta_in_urad = Some(parse_f64(key, value)?),
            "n_levels" => self.n_levels = Some(parse_usize(key, value)?),
            "j_max" => self.j_max = Some(parse_usize(key, value)?),
            "theta_points" => self.theta_points = Some(parse_usize(key, value)?),
            "phi_points" => self.phi_points = Some(parse_usize(key, value)?),
            "omega_bins" => self.omega_bins = Some(parse_usize(key, value)?),
            "interference" => self.interference = Some(parse_interference(value)?),
            "format" => self.format = Some(parse_format(value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "broaden_ev" => self.broaden_ev = Some(parse_f64(key, value)?),
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, String> {
    value
        .parse::<f64>()
        .map_err(|_| format!("{key}: not a number: `{value}`"))
}

fn parse_usize(key: &str, value: &str) -> Result<usize, String> {
    value
        .parse::<usize>()
        .map_err(|_| format!("{key}: not a non-negative integer: `{value}`"))
}

pub fn parse_interference(value: &str) -> Result<Interference, String> {
    match value {
        "on" => Ok(Interference::On),
        "off" => Ok(Interference::Off),
        "both" => Ok(Interference::Both),
        other => Err(format!(
            "interference: expected on, off, or both, got `{other}`"
        )),
    }
}

pub fn parse_format(value: &str) -> Result<OutputFormat, String> {
    match value {
        "csv" => Ok(OutputFormat::Csv),
        "jsonl" => Ok(OutputFormat::Jsonl),
        other => Err(format!("format: expected csv or jsonl, got `{other}`")),
    }
}

/// Parse a flat `key = value` config file. Full-line `#` comments and blank
/// lines are skipped; unknown and duplicate keys are errors, not warnings.
pub fn parse_config_file(text: &str) -> Result<RawConfig, String> {
    let mut raw = RawConfig::default();
    let mut seen: HashSet<String> = HashSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "line {lineno}: expected `key = value`, got `{line}`"
            ));
        };
        let key = key.trim();
        if !seen.insert(key.to_string()) {
            return Err(format!("line {lineno}: duplicate key `{key}`"));
        }
        raw.set(key, value.trim())
            .map_err(|e| format!("line {lineno}: {e}"))?;
    }
    Ok(raw)
}

/// Fully resolved run parameters, still in user-facing units. Everything
/// that influences the output bytes is echoed; `out` and the worker count
/// are deliberately not part of the echo.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub energy_gev: f64,
    pub v0_ev: f64,
    pub dp_angstrom: f64,
    pub theta_in_urad: f64,
    pub n_levels: usize,
    pub j_max: usize,
    pub theta_points: usize,
    pub phi_points: usize,
    pub omega_bins: usize,
    pub interference: Interference,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub broaden_ev: Option<f64>,
}

impl RunConfig {
    /// Echo pairs in a fixed order; `f64` values round-trip exactly.
    pub fn echo_pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("mode", self.mode.name().to_string()),
            ("energy_gev", self.energy_gev.to_string()),
            ("v0_ev", self.v0_ev.to_string()),
            ("dp_angstrom", self.dp_angstrom.to_string()),
            ("theta_in_urad", self.theta_in_urad.to_string()),
            ("n_levels", self.n_levels.to_string()),
            ("j_max", self.j_max.to_string()),
            ("theta_points", self.theta_points.to_string()),
            ("phi_points", self.phi_points.to_string()),
            ("omega_bins", self.omega_bins.to_string()),
            (
                "interference",
                interference_name(self.interference).to_string(),
            ),
            (
                "broaden_ev",
                self.broaden_ev
                    .map_or("none".to_string(), |s| s.to_string()),
            ),
            ("format", self.format.name().to_string()),
        ]
    }
}

/// A validated run: the echoable config plus the physics objects built
/// from it, in natural units.
#[derive(Debug)]
pub struct Resolved {
    pub config: RunConfig,
    pub beam: BeamParams,
    pub model: ChannelModel,
    pub warnings: Vec<String>,
}

const DEFAULT_V0_EV: f64 = 23.0;
const DEFAULT_DP_ANGSTROM: f64 = 1.92;
const DEFAULT_J_MAX: usize = 5;
const DEFAULT_THETA_POINTS: usize = 200;
const DEFAULT_PHI_POINTS: usize = 64;
const DEFAULT_OMEGA_BINS: usize = 200;

fn cfg_err(message: impl Into<String>) -> Failure {
    Failure::Config(message.into())
}

/// Fill defaults, validate, and construct the physics objects.
///
/// Derived defaults: the incidence angle is half the channeling critical
/// angle, the level count keeps every bound level, and j_max is 5 clamped
/// to the level count.
pub fn resolve(mode: Mode, raw: RawConfig) -> Result<Resolved, Failure> {
    let energy_gev = raw.energy_gev.ok_or_else(|| {
        cfg_err("missing required field energy_gev (flag --energy-gev or config key energy_gev)")
    })?;
    let v0_ev = raw.v0_ev.unwrap_or(DEFAULT_V0_EV);
    let dp_angstrom = raw.dp_angstrom.unwrap_or(DEFAULT_DP_ANGSTROM);
    let energy_ev = energy_gev * 1.0e9;

    let full =
        ChannelModel::new(v0_ev, dp_angstrom, energy_ev).map_err(|e| cfg_err(e.to_string()))?;
    let model = match raw.n_levels {
        Some(n) => {
            if n == 0 {
                return Err(cfg_err("n_levels: must be at least 1"));
            }
            ChannelModel::with_levels_extended(v0_ev, dp_angstrom, energy_ev, n)
                .map_err(|e| cfg_err(e.to_string()))?
        }
        None => full,
    };
    let n_levels = model.n_levels();

    let theta_p = model.critical_angle(energy_ev);
    let theta_in_urad = raw.theta_in_urad.unwrap_or(0.5 * theta_p * 1.0e6);
    let beam =
        BeamParams::new(energy_ev, theta_in_urad * 1.0e-6).map_err(|e| cfg_err(e.to_string()))?;

    let j_max = raw.j_max.unwrap_or(DEFAULT_J_MAX.min(n_levels));
    if j_max == 0 || j_max > n_levels {
        return Err(cfg_err(format!(
            "j_max: must lie in 1..={n_levels} for this channel, got {j_max}"
        )));
    }

    let theta_points = raw.theta_points.unwrap_or(DEFAULT_THETA_POINTS);
    if theta_points < 2 {
        return Err(cfg_err("theta_points: need at least 2 polar nodes"));
    }
    let phi_points = raw.phi_points.unwrap_or(DEFAULT_PHI_POINTS);
    if phi_points == 0 {
        return Err(cfg_err("phi_points: need at least 1 azimuthal node"));
    }
    let omega_bins = raw.omega_bins.unwrap_or(DEFAULT_OMEGA_BINS);
    if omega_bins == 0 {
        return Err(cfg_err("omega_bins: need at least 1 frequency bin"));
    }

    if let Some(sigma) = raw.broaden_ev {
        if mode != Mode::Spectrum {
            return Err(cfg_err("broaden_ev: only applies to the spectrum mode"));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(cfg_err(format!(
                "broaden_ev: must be positive, got {sigma}"
            )));
        }
    }

    let mut warnings = Vec::new();
    if theta_in_urad.abs() * 1.0e-6 > theta_p {
        warnings.push(format!(
            "incidence angle {:.1} urad exceeds the channeling critical angle {:.1} urad; \
             the transverse state is unbound and the level truncation is unreliable",
            theta_in_urad,
            theta_p * 1.0e6
        ));
    }

    Ok(Resolved {
        config: RunConfig {
            mode,
            energy_gev,
            v0_ev,
            dp_angstrom,
            theta_in_urad,
            n_levels,
            j_max,
            theta_points,
            phi_points,
            omega_bins,
            interference: raw.interference.unwrap_or(Interference::Both),
            format: raw.format.unwrap_or(OutputFormat::Csv),
            out: raw.out,
            broaden_ev: raw.broaden_ev,
        },
        beam,
        model,
        warnings,
    })
}
