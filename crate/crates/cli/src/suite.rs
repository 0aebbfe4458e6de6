//! The fixed verification suite run by `verify --suite`.

use quadspec::oracle::GridSpec;
use quadspec::series::{heun_coefficients, heun_residual_for, residual_samples, CoulombTerm, SignConvention};
use quadspec::{
    allowed_frequencies_with, compute_delta, oscillator_energy, EnergyFormula, Error as CoreError, QuantumNumbers,
    SystemParams,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{status, verify_one, ParamsOut, VerifyRow};
use crate::config::Potential;
use crate::error::CliError;

pub const RESIDUAL_TOL: f64 = 1e-10;
pub const ALPHA_SQ_TOL: f64 = 1e-14;

pub fn coulomb_params() -> SystemParams<f64> {
    SystemParams::new(1.0, 1.0, 2.0, 0.0).expect("valid")
}

pub fn oscillator_params() -> SystemParams<f64> {
    SystemParams::new(1.0, 1.0, 1.0, 0.0).expect("valid")
}

/// n ∈ 0..=5, |l| ∈ 1..=4 with l negative so that λ_m l < 0.
pub fn coulomb_states() -> Vec<QuantumNumbers> {
    (0..=5).flat_map(|n| (1..=4).map(move |a| QuantumNumbers::new(n, -a).expect("l != 0"))).collect()
}

pub fn oscillator_states() -> Vec<QuantumNumbers> {
    (1..=2).flat_map(|n| (1..=2).map(move |l| QuantumNumbers::new(n, l).expect("l != 0"))).collect()
}

/// States compared between the two recurrence conventions.
pub fn convention_states() -> Vec<QuantumNumbers> {
    (1..=3).flat_map(|n| (1..=6).map(move |l| QuantumNumbers::new(n, l).expect("l != 0"))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionSide {
    pub convention: &'static str,
    pub a1_over_alpha_theta: i32,
    pub alpha_sq: Vec<f64>,
    pub omega: Vec<f64>,
    pub energy_eq314: Vec<f64>,
    /// Max residual over the allowed ω with `(g + α/ξ)H`.
    pub residual_plus_form: f64,
    /// Same with `(g − α/ξ)H`.
    pub residual_minus_form: f64,
    pub passes_plus_form: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionEntry {
    pub n: u32,
    pub l: i32,
    pub theta: u32,
    pub alpha_plus: ConventionSide,
    pub alpha_minus: ConventionSide,
    pub max_alpha_sq_rel_diff: f64,
    pub outputs_identical: bool,
    pub exactly_one_passes: bool,
    pub status: &'static str,
}

fn side(p: &SystemParams<f64>, qn: &QuantumNumbers, conv: SignConvention) -> Result<ConventionSide, CoreError> {
    let sol = allowed_frequencies_with(p, qn, conv)?;
    let delta = compute_delta(p, qn);
    let n = qn.n() as usize;
    let theta = 2 * qn.abs_l() + 1;
    let xi = residual_samples(2.0 + 2.0 * ((2 * qn.n() + qn.abs_l()) as f64).sqrt(), 200);
    let mut plus: f64 = 0.0;
    let mut minus: f64 = 0.0;
    let mut energies = Vec::new();
    for omega in &sol.omegas {
        let alpha = delta / (p.mass() * omega).sqrt();
        let series = heun_coefficients(theta, 2.0 * n as f64, alpha, n + 2, conv)?;
        plus = plus.max(heun_residual_for(&series, &xi, CoulombTerm::Plus));
        minus = minus.max(heun_residual_for(&series, &xi, CoulombTerm::Minus));
        energies.push(oscillator_energy(p, qn, *omega, EnergyFormula::WithFieldShift)?);
    }
    Ok(ConventionSide {
        convention: conv.as_str(),
        a1_over_alpha_theta: match conv {
            SignConvention::AlphaPlus => 1,
            SignConvention::AlphaMinus => -1,
        },
        alpha_sq: sol.alpha_roots.iter().map(|a| a * a).collect(),
        omega: sol.omegas,
        energy_eq314: energies,
        residual_plus_form: plus,
        residual_minus_form: minus,
        passes_plus_form: plus <= RESIDUAL_TOL,
    })
}

pub fn convention_entry(p: &SystemParams<f64>, qn: &QuantumNumbers) -> Result<ConventionEntry, CoreError> {
    let a = side(p, qn, SignConvention::AlphaPlus)?;
    let b = side(p, qn, SignConvention::AlphaMinus)?;
    let same_len = a.alpha_sq.len() == b.alpha_sq.len();
    let max_diff = a.alpha_sq.iter().zip(&b.alpha_sq).fold(0.0f64, |m, (x, y)| m.max((x - y).abs() / x.abs()));
    let outputs_identical = same_len && max_diff <= ALPHA_SQ_TOL && a.omega == b.omega && a.energy_eq314 == b.energy_eq314;
    let exactly_one_passes = a.passes_plus_form != b.passes_plus_form;
    Ok(ConventionEntry {
        n: qn.n(),
        l: qn.l(),
        theta: 2 * qn.abs_l() + 1,
        max_alpha_sq_rel_diff: max_diff,
        status: status(outputs_identical && exactly_one_passes),
        alpha_plus: a,
        alpha_minus: b,
        outputs_identical,
        exactly_one_passes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub params: ParamsOut,
    pub records: Vec<VerifyRow>,
    pub status: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionReport {
    pub equation: &'static str,
    pub alpha_plus: &'static str,
    pub alpha_minus: &'static str,
    pub residual_tolerance: f64,
    pub params: ParamsOut,
    pub entries: Vec<ConventionEntry>,
    pub status: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub mode: &'static str,
    pub suite: &'static str,
    pub coulomb: Section,
    pub oscillator: Section,
    pub sign_convention: ConventionReport,
    pub status: &'static str,
}

fn section(p: SystemParams<f64>, states: &[QuantumNumbers], potential: Potential) -> Result<Section, CliError> {
    let records = states
        .par_iter()
        .map(|qn| verify_one(&p, qn, potential, None, GridSpec::default()))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = records.iter().all(|r| r.status == "PASS");
    Ok(Section { params: ParamsOut::of(&p), records, status: status(pass) })
}

pub fn convention_report() -> Result<ConventionReport, CliError> {
    let p = oscillator_params();
    let entries = convention_states()
        .par_iter()
        .map(|qn| convention_entry(&p, qn))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = entries.iter().all(|e| e.status == "PASS");
    Ok(ConventionReport {
        equation: "H'' + (theta/xi - 2 xi) H' + (g + alpha/xi) H = 0",
        alpha_plus: "a_1 = +alpha/theta; Frobenius series of the equation with (g - alpha/xi)",
        alpha_minus: "a_1 = -alpha/theta; Frobenius series of the equation with (g + alpha/xi)",
        residual_tolerance: RESIDUAL_TOL,
        params: ParamsOut::of(&p),
        entries,
        status: status(pass),
    })
}

pub fn run_suite() -> Result<SuiteReport, CliError> {
    let coulomb = section(coulomb_params(), &coulomb_states(), Potential::Coulomb)?;
    let oscillator = section(oscillator_params(), &oscillator_states(), Potential::Oscillator)?;
    let sign_convention = convention_report()?;
    let pass = [coulomb.status, oscillator.status, sign_convention.status].iter().all(|s| *s == "PASS");
    Ok(SuiteReport { mode: "verify", suite: "reference", coulomb, oscillator, sign_convention, status: status(pass) })
}
