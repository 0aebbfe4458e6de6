//! One function per output mode. Each returns the artifact text; nothing
//! here touches the filesystem.

use quadspec::oracle::{verify_state_with, GridSpec, VerifyMode};
use quadspec::{
    allowed_frequencies, compute_delta, compute_tau, constrained_state, coulomb_energy, coulomb_wavefunction,
    energy_from_zeta_sq, log_spaced, oscillator_state, Error as CoreError, OscillatorState, QuantumNumbers,
    SystemParams,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, Potential, RunConfig};
use crate::error::CliError;
use crate::format::{csv_line, g17};

pub const WAVEFUNCTION_SAMPLES: usize = 400;
/// Relative distance at which a user-supplied ω is taken to be an allowed one.
const OMEGA_MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamsOut {
    pub mass: f64,
    pub quadrupole: f64,
    pub lambda_m: f64,
    pub k_axial: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
}

impl ParamsOut {
    pub fn of(p: &SystemParams<f64>) -> Self {
        Self { mass: p.mass(), quadrupole: p.quadrupole(), lambda_m: p.lambda_m(), k_axial: p.k_axial(), omega: p.omega() }
    }
}

/// Finished output of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub text: String,
    /// Some check in the artifact reported FAIL.
    pub failed: bool,
}

impl Artifact {
    fn ok(text: String) -> Self {
        Self { text, failed: false }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

/// Evaluates `f` for every state in parallel, returning results in input
/// order and the first error in that order.
fn sweep<R: Send, F>(states: &[(u32, i32)], f: F) -> Result<Vec<R>, CliError>
where
    F: Fn(QuantumNumbers) -> Result<R, CoreError> + Sync,
{
    states
        .par_iter()
        .map(|&(n, l)| QuantumNumbers::new(n, l).and_then(&f))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::Compute)
}

#[derive(Serialize)]
struct Rows<'a, R> {
    mode: &'a str,
    rows: Vec<R>,
}

#[derive(Serialize)]
struct CoulombRow {
    n: u32,
    l: i32,
    delta: f64,
    tau: f64,
    energy: f64,
    params: ParamsOut,
}

pub fn coulomb(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let p = cfg.params;
    let rows = sweep(&cfg.states(), |qn| {
        Ok(CoulombRow {
            n: qn.n(),
            l: qn.l(),
            delta: compute_delta(&p, &qn),
            tau: compute_tau(&p, &qn)?,
            energy: coulomb_energy(&p, &qn)?,
            params: ParamsOut::of(&p),
        })
    })?;
    Ok(Artifact::ok(match cfg.output_format {
        Format::Json => json(&Rows { mode: "coulomb", rows }),
        Format::Csv => {
            let mut out = csv_line(["n", "l", "delta", "tau", "energy"].map(String::from));
            for r in rows {
                out += &csv_line([r.n.to_string(), r.l.to_string(), g17(r.delta), g17(r.tau), g17(r.energy)]);
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct OscillatorRow {
    n: u32,
    l: i32,
    omega: f64,
    alpha: f64,
    g: f64,
    energy_eq314: f64,
    energy_eq316: f64,
    allowed_frequencies: usize,
    selection_rule: &'static str,
    params: ParamsOut,
}

/// The state at the configured ω, which must be one of the allowed values,
/// or at the largest allowed ω when none is configured.
fn oscillator_at(p: &SystemParams<f64>, qn: &QuantumNumbers) -> Result<(OscillatorState<f64>, &'static str), CoreError> {
    match p.omega() {
        None => Ok((constrained_state(p, qn.n(), qn.l())?, quadspec::oscillator::SELECTION_RULE)),
        Some(omega) => {
            let sol = allowed_frequencies(p, qn)?;
            let matched = sol.omegas.iter().copied().find(|w| (w - omega).abs() <= OMEGA_MATCH_TOL * w);
            let omega = matched.ok_or(CoreError::InvalidFrequency(omega))?;
            let mut state = oscillator_state(p, qn, omega)?;
            state.candidates = sol.omegas.len();
            Ok((state, "configured"))
        }
    }
}

pub fn oscillator(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let p = cfg.params;
    let rows = sweep(&cfg.states(), |qn| {
        let (s, rule) = oscillator_at(&p, &qn)?;
        Ok(OscillatorRow {
            n: qn.n(),
            l: qn.l(),
            omega: s.omega,
            alpha: s.derived.alpha,
            g: s.derived.g_param,
            energy_eq314: s.energy_with_shift,
            energy_eq316: s.energy_axial_only,
            allowed_frequencies: s.candidates,
            selection_rule: rule,
            params: ParamsOut::of(&p),
        })
    })?;
    Ok(Artifact::ok(match cfg.output_format {
        Format::Json => json(&Rows { mode: "oscillator", rows }),
        Format::Csv => {
            let mut out = csv_line(["n", "l", "omega", "alpha", "g", "energy_eq314", "energy_eq316"].map(String::from));
            for r in rows {
                out += &csv_line([
                    r.n.to_string(),
                    r.l.to_string(),
                    g17(r.omega),
                    g17(r.alpha),
                    g17(r.g),
                    g17(r.energy_eq314),
                    g17(r.energy_eq316),
                ]);
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct FrequencyRow {
    n: u32,
    l: i32,
    alpha_root: f64,
    omega: f64,
    params: ParamsOut,
}

pub fn frequencies(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let p = cfg.params;
    let per_state = sweep(&cfg.states(), |qn| {
        let sol = allowed_frequencies(&p, &qn)?;
        Ok(sol
            .alpha_roots
            .iter()
            .zip(&sol.omegas)
            .map(|(a, w)| FrequencyRow { n: qn.n(), l: qn.l(), alpha_root: *a, omega: *w, params: ParamsOut::of(&p) })
            .collect::<Vec<_>>())
    })?;
    let rows: Vec<FrequencyRow> = per_state.into_iter().flatten().collect();
    Ok(Artifact::ok(match cfg.output_format {
        Format::Json => json(&Rows { mode: "frequencies", rows }),
        Format::Csv => {
            let mut out = csv_line(["n", "l", "alpha_root", "omega"].map(String::from));
            for r in rows {
                out += &csv_line([r.n.to_string(), r.l.to_string(), g17(r.alpha_root), g17(r.omega)]);
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct WavefunctionDoc {
    mode: &'static str,
    n: u32,
    l: i32,
    tau: f64,
    params: ParamsOut,
    rho: Vec<f64>,
    r_normalized: Vec<f64>,
}

/// Coulomb-type R(ρ) of a single state, normalized over ρ dρ.
pub fn wavefunction(cfg: &RunConfig, samples: Option<usize>) -> Result<Artifact, CliError> {
    let p = cfg.params;
    let qn = QuantumNumbers::new(cfg.n_range.lo as u32, cfg.l_range.lo as i32)?;
    let count = samples.unwrap_or(WAVEFUNCTION_SAMPLES);
    if count < 2 {
        return Err(CliError::Usage(format!("--samples {count} must be at least 2")));
    }
    let tau = compute_tau(&p, &qn)?;
    let rho = log_spaced(1e-3 / tau, 20.0 / tau, count);
    let values = coulomb_wavefunction(&p, &qn, &rho)?;
    Ok(Artifact::ok(match cfg.output_format {
        Format::Json => json(&WavefunctionDoc {
            mode: "wavefunction",
            n: qn.n(),
            l: qn.l(),
            tau,
            params: ParamsOut::of(&p),
            rho,
            r_normalized: values,
        }),
        Format::Csv => {
            let mut out = csv_line(["rho", "R_normalized"].map(String::from));
            for (r, v) in rho.iter().zip(&values) {
                out += &csv_line([g17(*r), g17(*v)]);
            }
            out
        }
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub potential: &'static str,
    pub n: u32,
    pub l: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    pub eigen_index: usize,
    pub grid_points: [usize; 2],
    pub rho_max: f64,
    pub analytic_zeta_sq: f64,
    pub coarse_zeta_sq: f64,
    pub fine_zeta_sq: f64,
    pub extrapolated_zeta_sq: f64,
    pub rel_error: f64,
    pub convergence_ratio: f64,
    pub analytic_energy: f64,
    pub oracle_energy: f64,
    pub energy_rel_error: f64,
    pub status: &'static str,
    pub params: ParamsOut,
}

pub fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// One oracle comparison. Oscillator states run at `omega` when given, else
/// at the configured ω, else at the largest allowed ω.
pub fn verify_one(
    p: &SystemParams<f64>,
    qn: &QuantumNumbers,
    potential: Potential,
    omega: Option<f64>,
    grid: GridSpec<f64>,
) -> Result<VerifyRow, CoreError> {
    let (mode, omega) = match potential {
        Potential::Coulomb => (VerifyMode::Coulomb, None),
        Potential::Oscillator => {
            let omega = match omega {
                Some(w) => w,
                None => oscillator_at(p, qn)?.0.omega,
            };
            (VerifyMode::Oscillator, Some(omega))
        }
    };
    let r = verify_state_with(p, qn, mode, omega, grid)?;
    let analytic_energy = energy_from_zeta_sq(p, r.analytic);
    let oracle_energy = energy_from_zeta_sq(p, r.extrapolated);
    let params = match omega {
        Some(w) => p.without_omega().with_omega(w)?,
        None => *p,
    };
    Ok(VerifyRow {
        potential: r.kind.as_str(),
        n: r.n,
        l: r.l,
        omega,
        eigen_index: r.eigen_index,
        grid_points: [r.grid_points.0, r.grid_points.1],
        rho_max: r.rho_max,
        analytic_zeta_sq: r.analytic,
        coarse_zeta_sq: r.coarse,
        fine_zeta_sq: r.fine,
        extrapolated_zeta_sq: r.extrapolated,
        rel_error: r.rel_error,
        convergence_ratio: r.convergence_ratio,
        analytic_energy,
        oracle_energy,
        energy_rel_error: ((oracle_energy - analytic_energy) / analytic_energy).abs(),
        status: status(r.passed),
        params: ParamsOut::of(&params),
    })
}

#[derive(Serialize)]
struct VerifyDoc {
    mode: &'static str,
    potential: &'static str,
    records: Vec<VerifyRow>,
    status: &'static str,
}

pub fn verify(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let p = cfg.params;
    let grid = GridSpec { rho_max: cfg.grid.rho_max, points: cfg.grid.n_points };
    let potential = cfg.potential;
    let records = sweep(&cfg.states(), |qn| verify_one(&p, &qn, potential, None, grid))?;
    let pass = records.iter().all(|r| r.status == "PASS");
    let doc = VerifyDoc {
        mode: "verify",
        potential: match potential {
            Potential::Coulomb => "coulomb",
            Potential::Oscillator => "oscillator",
        },
        records,
        status: status(pass),
    };
    Ok(Artifact { text: json(&doc), failed: !pass })
}
