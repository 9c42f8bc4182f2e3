//! Command-line flags, the optional JSON config file, and their resolution
//! into a validated [`RunConfig`].

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use qnet_core::spectrum::critical_phi;
use qnet_core::{NetworkSpec, Regime, SweepConfig};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "qnet",
    version,
    about = "Spectra, sweeps and propagation for Ising-type node networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Sweep,
    Propagate,
    Critical,
    Regime,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponents γ_n of every phase sector.
    Spectrum(Flags),
    /// γ_0 and its one-sided derivatives over a grid of φ.
    Sweep(Flags),
    /// Output amplitudes after M periods.
    Propagate(Flags),
    /// Critical-point constants.
    Critical(Flags),
    /// Regime label of a single network.
    Regime(Flags),
}

impl Command {
    pub fn split(self) -> (CommandKind, Flags) {
        match self {
            Command::Spectrum(f) => (CommandKind::Spectrum, f),
            Command::Sweep(f) => (CommandKind::Sweep, f),
            Command::Propagate(f) => (CommandKind::Propagate, f),
            Command::Critical(f) => (CommandKind::Critical, f),
            Command::Regime(f) => (CommandKind::Regime, f),
        }
    }
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Sweep => "sweep",
            CommandKind::Propagate => "propagate",
            CommandKind::Critical => "critical",
            CommandKind::Regime => "regime",
        }
    }
}

/// Every setting is optional here; a config file supplies the same fields
/// under the same names, and flags win.
#[derive(Debug, Default, Clone, clap::Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    /// Node pairs per column (N ≥ 2).
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    /// Number of periods.
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub m: Option<usize>,
    /// A-layer angle: a number, "ising" or "critical".
    #[arg(long)]
    pub theta: Option<Angle>,
    /// B-layer angle: a number or "critical".
    #[arg(long)]
    pub phi: Option<Angle>,
    /// su11 (active nodes) or su2 (beam splitters).
    #[arg(long)]
    pub regime: Option<RegimeArg>,
    #[arg(long = "phi-lo")]
    #[serde(alias = "phi-lo")]
    pub phi_lo: Option<f64>,
    #[arg(long = "phi-hi")]
    #[serde(alias = "phi-hi")]
    pub phi_hi: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Finite-difference step of the sweep derivatives.
    #[arg(long = "fd-step")]
    #[serde(alias = "fd-step")]
    pub fd_step: Option<f64>,
    /// "superposition:n=K" or "mode:j=J".
    #[arg(long)]
    pub input: Option<InputSpec>,
    #[arg(long)]
    pub format: Option<Format>,
    /// Write data here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON file with any of the above fields.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Flags {
    /// Fields set in `self` take precedence over `base`.
    pub fn over(self, base: Flags) -> Flags {
        Flags {
            n: self.n.or(base.n),
            m: self.m.or(base.m),
            theta: self.theta.or(base.theta),
            phi: self.phi.or(base.phi),
            regime: self.regime.or(base.regime),
            phi_lo: self.phi_lo.or(base.phi_lo),
            phi_hi: self.phi_hi.or(base.phi_hi),
            steps: self.steps.or(base.steps),
            fd_step: self.fd_step.or(base.fd_step),
            input: self.input.or(base.input),
            format: self.format.or(base.format),
            output: self.output.or(base.output),
            config: None,
        }
    }

    pub fn from_file(path: &Path) -> Result<Flags, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(try_from = "RawAngle")]
pub enum Angle {
    Value(f64),
    Ising,
    Critical,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAngle {
    Number(f64),
    Text(String),
}

impl TryFrom<RawAngle> for Angle {
    type Error = String;
    fn try_from(raw: RawAngle) -> Result<Self, String> {
        match raw {
            RawAngle::Number(x) => Ok(Angle::Value(x)),
            RawAngle::Text(s) => s.parse(),
        }
    }
}

impl FromStr for Angle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ising" => Ok(Angle::Ising),
            "critical" => Ok(Angle::Critical),
            _ => s
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Angle::Value)
                .ok_or_else(|| {
                    format!("expected a finite number, \"ising\" or \"critical\", got {s:?}")
                }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RegimeArg {
    Su11,
    Su2,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Regime {
        match r {
            RegimeArg::Su11 => Regime::Su11,
            RegimeArg::Su2 => Regime::Su2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(try_from = "String")]
pub enum InputSpec {
    /// Phase index `n`, counted from 0.
    Superposition(usize),
    /// Mode index `j`, counted from 1.
    Mode(usize),
}

impl FromStr for InputSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected \"superposition:n=K\" or \"mode:j=J\", got {s:?}");
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let (key, value) = rest.split_once('=').ok_or_else(bad)?;
        let value: usize = value.parse().map_err(|_| bad())?;
        match (kind, key) {
            ("superposition", "n") => Ok(InputSpec::Superposition(value)),
            ("mode", "j") => Ok(InputSpec::Mode(value)),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for InputSpec {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl fmt::Display for InputSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputSpec::Superposition(n) => write!(f, "superposition:n={n}"),
            InputSpec::Mode(j) => write!(f, "mode:j={j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Spectrum(NetworkSpec),
    Sweep(SweepConfig),
    Propagate(NetworkSpec, InputSpec),
    Critical(Regime),
    Regime(NetworkSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub job: Job,
    pub format: Format,
    pub output: Option<PathBuf>,
}

pub const DEFAULT_STEPS: usize = 400;
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Default sweep window: the active kink sits at 0.8814, the passive one
/// at π/4; both windows keep φ' inside (0, π/2).
fn default_window(regime: Regime) -> (f64, f64) {
    match regime {
        Regime::Su11 => (0.3, 1.6),
        Regime::Su2 => (0.2, 1.35),
    }
}

fn critical_angle(regime: Regime) -> f64 {
    match regime {
        Regime::Su11 => critical_phi(),
        Regime::Su2 => FRAC_PI_4,
    }
}

fn require<T>(value: Option<T>, flag: &str, command: CommandKind) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{} requires --{flag}", command.name())))
}

fn build_spec(
    flags: &Flags,
    command: CommandKind,
    n: usize,
    regime: Regime,
) -> Result<NetworkSpec, CliError> {
    let m = flags.m.unwrap_or(1);
    let phi = match require(flags.phi, "phi", command)? {
        Angle::Value(x) => x,
        Angle::Critical => critical_angle(regime),
        Angle::Ising => {
            return Err(CliError::Usage(
                "--phi does not accept \"ising\"; use it for --theta".into(),
            ))
        }
    };
    let theta = flags.theta.unwrap_or(match regime {
        Regime::Su11 => Angle::Ising,
        Regime::Su2 => Angle::Value(FRAC_PI_4),
    });
    let spec = match (regime, theta) {
        (Regime::Su11, Angle::Ising) => NetworkSpec::ising(n, m, phi),
        (Regime::Su2, Angle::Ising) => {
            return Err(CliError::Usage(
                "--theta ising applies to --regime su11 only".into(),
            ))
        }
        (Regime::Su11, t) => NetworkSpec::active(n, m, angle_value(t, regime), phi),
        (Regime::Su2, t) => NetworkSpec::passive(n, m, angle_value(t, regime), phi),
    };
    Ok(spec?)
}

fn angle_value(a: Angle, regime: Regime) -> f64 {
    match a {
        Angle::Value(x) => x,
        // On the Ising line θ_c = φ_c, since sinh² φ_c = 1.
        Angle::Critical | Angle::Ising => critical_angle(regime),
    }
}

/// Validates merged flags for `command`.
pub fn resolve(command: CommandKind, flags: Flags) -> Result<RunConfig, CliError> {
    let regime: Regime = flags.regime.unwrap_or(RegimeArg::Su11).into();
    let default_format = match command {
        CommandKind::Critical | CommandKind::Regime => Format::Json,
        _ => Format::Csv,
    };
    let format = flags.format.unwrap_or(default_format);
    let job = match command {
        CommandKind::Spectrum => {
            let n = require(flags.n, "N", command)?;
            Job::Spectrum(build_spec(&flags, command, n, regime)?)
        }
        CommandKind::Propagate => {
            let n = require(flags.n, "N", command)?;
            let input = flags.input.unwrap_or(InputSpec::Superposition(0));
            Job::Propagate(build_spec(&flags, command, n, regime)?, input)
        }
        // The label does not depend on N.
        CommandKind::Regime => {
            Job::Regime(build_spec(&flags, command, flags.n.unwrap_or(2), regime)?)
        }
        CommandKind::Critical => Job::Critical(regime),
        CommandKind::Sweep => {
            let (lo, hi) = default_window(regime);
            Job::Sweep(SweepConfig {
                regime,
                phi_lo: flags.phi_lo.unwrap_or(lo),
                phi_hi: flags.phi_hi.unwrap_or(hi),
                steps: flags.steps.unwrap_or(DEFAULT_STEPS),
                fd_step: flags.fd_step.unwrap_or(DEFAULT_FD_STEP),
            })
        }
    };
    Ok(RunConfig {
        job,
        format,
        output: flags.output,
    })
}

/// Parses `argv` (including the program name), loads `--config` if given,
/// and resolves the result.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    let (kind, flags) = cli.command.split();
    let flags = match flags.config.clone() {
        Some(path) => flags.over(Flags::from_file(&path)?),
        None => flags,
    };
    resolve(kind, flags)
}
