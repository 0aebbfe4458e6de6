//! JSON configuration and its validation into a [`RunConfig`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use quadspec::{Error as CoreError, SystemParams};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Coulomb,
    Oscillator,
    Frequencies,
    Verify,
    Wavefunction,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Coulomb => "coulomb",
            Mode::Oscillator => "oscillator",
            Mode::Frequencies => "frequencies",
            Mode::Verify => "verify",
            Mode::Wavefunction => "wavefunction",
        }
    }

    fn needs_excited(self, potential: Potential) -> bool {
        match self {
            Mode::Oscillator | Mode::Frequencies => true,
            Mode::Verify => potential == Potential::Oscillator,
            Mode::Coulomb | Mode::Wavefunction => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Potential checked by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Potential {
    #[default]
    Coulomb,
    Oscillator,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_max: Option<f64>,
}

/// The configuration document as written; every key optional.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrupole: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_axial: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_range: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_range: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridOverride>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<Potential>,
}

impl ConfigFile {
    pub fn from_json(bytes: &[u8]) -> Result<Self, CliError> {
        let mut de = serde_json::Deserializer::from_slice(bytes);
        serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let key = if path == "." { "<root>".to_string() } else { path };
            CliError::config(key, e.into_inner().to_string())
        })
    }

    /// Fills unset keys from `base`; keys set here win.
    pub fn or(self, base: ConfigFile) -> ConfigFile {
        ConfigFile {
            mass: self.mass.or(base.mass),
            quadrupole: self.quadrupole.or(base.quadrupole),
            lambda_m: self.lambda_m.or(base.lambda_m),
            k_axial: self.k_axial.or(base.k_axial),
            omega: self.omega.or(base.omega),
            mode: self.mode.or(base.mode),
            n_range: self.n_range.or(base.n_range),
            l_range: self.l_range.or(base.l_range),
            output_format: self.output_format.or(base.output_format),
            output_path: self.output_path.or(base.output_path),
            grid: match (self.grid, base.grid) {
                (Some(a), Some(b)) => Some(GridOverride {
                    n_points: a.n_points.or(b.n_points),
                    rho_max: a.rho_max.or(b.rho_max),
                }),
                (a, b) => a.or(b),
            },
            potential: self.potential.or(base.potential),
        }
    }
}

/// Inclusive integer range `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn single(v: i64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    /// `"3"` or `"a..b"`, both ends included.
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad integer {t:?}: {e}"));
        match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                Ok(Self { lo: parse(a)?, hi: parse(b)? })
            }
            None => parse(s).map(Self::single),
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams<f64>,
    pub mode: Mode,
    pub potential: Potential,
    pub n_range: IntRange,
    pub l_range: IntRange,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub grid: GridOverride,
}

fn required(value: Option<f64>, key: &'static str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::config(key, "missing"))
}

fn range(value: Option<[i64; 2]>, key: &'static str) -> Result<IntRange, CliError> {
    let [lo, hi] = value.ok_or_else(|| CliError::config(key, "missing"))?;
    if lo > hi {
        return Err(CliError::config(key, format!("empty range [{lo}, {hi}]")));
    }
    Ok(IntRange { lo, hi })
}

impl RunConfig {
    pub fn validate(file: ConfigFile) -> Result<Self, CliError> {
        let mode = file.mode.ok_or_else(|| CliError::config("mode", "missing"))?;
        let mass = required(file.mass, "mass")?;
        let quadrupole = required(file.quadrupole, "quadrupole")?;
        let lambda_m = required(file.lambda_m, "lambda_m")?;
        let k_axial = file.k_axial.unwrap_or(0.0);
        let mut params = SystemParams::new(mass, quadrupole, lambda_m, k_axial).map_err(|e| match e {
            CoreError::InvalidParams { field, reason } => CliError::config(field, reason),
            other => CliError::Compute(other),
        })?;
        if let Some(omega) = file.omega {
            if !(omega > 0.0) || !omega.is_finite() {
                return Err(CliError::config("omega", "must be > 0"));
            }
            params = params.with_omega(omega).map_err(|e| CliError::config("omega", e.to_string()))?;
        }
        let potential = file.potential.unwrap_or_default();
        let n_range = range(file.n_range, "n_range")?;
        let l_range = range(file.l_range, "l_range")?;
        if n_range.lo < 0 || n_range.hi > u32::MAX as i64 {
            return Err(CliError::config("n_range", "n must be a nonnegative integer"));
        }
        if mode.needs_excited(potential) && n_range.lo < 1 {
            return Err(CliError::config("n_range", "oscillator states need n >= 1"));
        }
        if l_range.contains(0) {
            return Err(CliError::config("l_range", "l = 0 admits no bound states"));
        }
        if l_range.lo < i32::MIN as i64 || l_range.hi > i32::MAX as i64 {
            return Err(CliError::config("l_range", "out of range"));
        }
        if mode == Mode::Wavefunction && (n_range.lo != n_range.hi || l_range.lo != l_range.hi) {
            return Err(CliError::config("n_range", "wavefunction output takes a single (n, l)"));
        }
        let grid = file.grid.unwrap_or_default();
        if let Some(points) = grid.n_points {
            if points < quadspec::oracle::MIN_POINTS {
                return Err(CliError::config("grid.n_points", format!("must be >= {}", quadspec::oracle::MIN_POINTS)));
            }
        }
        if let Some(rho_max) = grid.rho_max {
            if !(rho_max > 0.0) || !rho_max.is_finite() {
                return Err(CliError::config("grid.rho_max", "must be > 0"));
            }
        }
        Ok(Self {
            params,
            mode,
            potential,
            n_range,
            l_range,
            output_format: file.output_format.unwrap_or_default(),
            output_path: file.output_path,
            grid,
        })
    }

    /// The document that validates back to this configuration.
    pub fn to_file(&self) -> ConfigFile {
        ConfigFile {
            mass: Some(self.params.mass()),
            quadrupole: Some(self.params.quadrupole()),
            lambda_m: Some(self.params.lambda_m()),
            k_axial: Some(self.params.k_axial()),
            omega: self.params.omega(),
            mode: Some(self.mode),
            n_range: Some([self.n_range.lo, self.n_range.hi]),
            l_range: Some([self.l_range.lo, self.l_range.hi]),
            output_format: Some(self.output_format),
            output_path: self.output_path.clone(),
            grid: (self.grid != GridOverride::default()).then_some(self.grid),
            potential: Some(self.potential),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("config serializes")
    }

    pub fn states(&self) -> Vec<(u32, i32)> {
        let mut out = Vec::new();
        for n in self.n_range.iter() {
            for l in self.l_range.iter() {
                out.push((n as u32, l as i32));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ConfigFile {
        ConfigFile::from_json(br#"{"mass":1,"quadrupole":1,"lambda_m":2,"k_axial":0}"#).unwrap()
    }

    #[test]
    fn happy_path() {
        let mut f = base();
        f.mode = Some(Mode::Coulomb);
        f.l_range = Some([-1, -1]);
        f.n_range = Some([0, 3]);
        let c = RunConfig::validate(f).unwrap();
        assert_eq!(c.states().len(), 4);
        assert_eq!(c.output_format, Format::Csv);
    }

    #[test]
    fn negative_quadrupole() {
        let f = ConfigFile::from_json(br#"{"mass":1,"quadrupole":-1,"lambda_m":2,"mode":"coulomb","n_range":[0,0],"l_range":[-1,-1]}"#).unwrap();
        let err = RunConfig::validate(f).unwrap_err();
        assert_eq!(err, CliError::config("quadrupole", "must be > 0"));
    }

    #[test]
    fn zero_in_l_range() {
        let mut f = base();
        f.mode = Some(Mode::Coulomb);
        f.n_range = Some([0, 0]);
        f.l_range = Some([-2, 2]);
        assert_eq!(RunConfig::validate(f).unwrap_err(), CliError::config("l_range", "l = 0 admits no bound states"));
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = ConfigFile::from_json(br#"{"mass":1,"colour":2}"#).unwrap_err();
        assert!(matches!(&err, CliError::Config { key, .. } if key == "colour"), "{err:?}");
        let err = ConfigFile::from_json(br#"{"grid":{"n_points":1000,"spacing":2}}"#).unwrap_err();
        assert!(matches!(&err, CliError::Config { key, .. } if key == "grid.spacing"), "{err:?}");
        let err = ConfigFile::from_json(br#"{"mass":"heavy"}"#).unwrap_err();
        assert!(matches!(&err, CliError::Config { key, .. } if key == "mass"), "{err:?}");
    }

    #[test]
    fn ranges_parse() {
        assert_eq!("-4..-1".parse::<IntRange>().unwrap(), IntRange { lo: -4, hi: -1 });
        assert_eq!("2".parse::<IntRange>().unwrap(), IntRange::single(2));
        assert_eq!("0..=3".parse::<IntRange>().unwrap(), IntRange { lo: 0, hi: 3 });
        assert!("a..b".parse::<IntRange>().is_err());
    }
}
