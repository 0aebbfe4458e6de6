//! Command-line front end for `quadspec`: spectra, allowed frequencies,
//! wavefunctions and oracle verification as CSV or JSON.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod suite;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use commands::Artifact;
pub use config::{ConfigFile, Format, GridOverride, IntRange, Mode, Potential, RunConfig};
pub use error::CliError;

pub const OUT_DIR_ENV: &str = "QUADSPEC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "quadspec", version, about = "Bound states of a quadrupole moment in a radial magnetic field")]
pub struct Cli {
    /// JSON configuration; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file. Defaults to $QUADSPEC_OUT_DIR/<mode>.<ext>, else stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct StateArgs {
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub quadrupole: Option<f64>,
    #[arg(long = "lambda-m", allow_hyphen_values = true)]
    pub lambda_m: Option<f64>,
    #[arg(long = "k-axial", allow_hyphen_values = true)]
    pub k_axial: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Radial quantum number or inclusive range `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<IntRange>,
    /// Angular quantum number or inclusive range `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<IntRange>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coulomb-type spectrum.
    Coulomb(StateArgs),
    /// Oscillator states at their allowed frequencies.
    Oscillator(StateArgs),
    /// All allowed frequencies per (n, l).
    Frequencies(StateArgs),
    /// Normalized Coulomb-type radial function of one state.
    Wavefunction {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Compare closed forms with the finite-difference oracle.
    Verify {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        potential: Option<Potential>,
        /// Run the fixed reference suite; state flags are ignored.
        #[arg(long)]
        suite: bool,
    },
}

impl Command {
    fn mode(&self) -> Mode {
        match self {
            Command::Coulomb(_) => Mode::Coulomb,
            Command::Oscillator(_) => Mode::Oscillator,
            Command::Frequencies(_) => Mode::Frequencies,
            Command::Wavefunction { .. } => Mode::Wavefunction,
            Command::Verify { .. } => Mode::Verify,
        }
    }

    fn state(&self) -> &StateArgs {
        match self {
            Command::Coulomb(s) | Command::Oscillator(s) | Command::Frequencies(s) => s,
            Command::Wavefunction { state, .. } | Command::Verify { state, .. } => state,
        }
    }
}

fn range_pair(r: Option<IntRange>) -> Option<[i64; 2]> {
    r.map(|r| [r.lo, r.hi])
}

/// Flags as a partial configuration document.
fn flags_file(cli: &Cli) -> ConfigFile {
    let s = cli.command.state();
    ConfigFile {
        mass: s.mass,
        quadrupole: s.quadrupole,
        lambda_m: s.lambda_m,
        k_axial: s.k_axial,
        omega: s.omega,
        mode: Some(cli.command.mode()),
        n_range: range_pair(s.n),
        l_range: range_pair(s.l),
        output_format: cli.format,
        output_path: cli.out.clone(),
        grid: None,
        potential: match &cli.command {
            Command::Verify { potential, .. } => *potential,
            _ => None,
        },
    }
}

fn read_config(path: &Path) -> Result<ConfigFile, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    ConfigFile::from_json(&bytes)
}

/// Where the artifact goes; `None` means stdout.
pub fn destination(explicit: Option<&Path>, env_dir: Option<&Path>, mode: Mode, format: Format) -> Option<PathBuf> {
    match (explicit, env_dir) {
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(dir)) => Some(dir.join(format!("{}.{}", mode.as_str(), format.extension()))),
        (None, None) => None,
    }
}

/// Result of a run: the artifact and the file it belongs in.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub artifact: Artifact,
    pub path: Option<PathBuf>,
}

pub fn run(cli: &Cli, env_dir: Option<&Path>) -> Result<Outcome, CliError> {
    let file = match &cli.config {
        Some(path) => flags_file(cli).or(read_config(path)?),
        None => flags_file(cli),
    };
    if let Command::Verify { suite: true, .. } = cli.command {
        if file.output_format == Some(Format::Csv) {
            return Err(CliError::Usage("verify output is JSON only".into()));
        }
        let report = suite::run_suite()?;
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        let failed = report.status != "PASS";
        let path = destination(file.output_path.as_deref(), env_dir, Mode::Verify, Format::Json);
        return Ok(Outcome { artifact: Artifact { text, failed }, path });
    }
    let mut cfg_file = file;
    if cli.command.mode() == Mode::Verify {
        if cfg_file.output_format == Some(Format::Csv) {
            return Err(CliError::Usage("verify output is JSON only".into()));
        }
        cfg_file.output_format = Some(Format::Json);
    }
    let cfg = RunConfig::validate(cfg_file)?;
    let artifact = match &cli.command {
        Command::Coulomb(_) => commands::coulomb(&cfg)?,
        Command::Oscillator(_) => commands::oscillator(&cfg)?,
        Command::Frequencies(_) => commands::frequencies(&cfg)?,
        Command::Wavefunction { samples, .. } => commands::wavefunction(&cfg, *samples)?,
        Command::Verify { .. } => commands::verify(&cfg)?,
    };
    let path = destination(cfg.output_path.as_deref(), env_dir, cfg.mode, cfg.output_format);
    Ok(Outcome { artifact, path })
}

/// Writes the outcome and returns the process exit code.
pub fn emit(outcome: &Outcome) -> Result<i32, CliError> {
    match &outcome.path {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, &outcome.artifact.text)?;
        }
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.artifact.text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(if outcome.artifact.failed { 1 } else { 0 })
}
