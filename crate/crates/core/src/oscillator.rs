//! Two-dimensional oscillator with the induced Coulomb-type term.
//!
//! In ξ = √(mω) ρ the regular solution is R = e^{−ξ²/2} ξ^{|l|} H(ξ) with H a
//! biconfluent Heun series. H is a polynomial of degree n only when both
//!
//! ```text
//! g = ζ²/(mω) − 2 − 2|l| = 2n     and     a_{n+1}(α) = 0,   α = δ/√(mω).
//! ```
//!
//! The first fixes the energy; the second is a polynomial equation in α and
//! therefore restricts ω = δ²/(mα²) to a discrete set per (n, l).

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, GateReason, Result};
use crate::model::{compute_delta, compute_oscillator_params, theta_for, OscillatorDerived, QuantumNumbers, SystemParams};
use crate::scalar::{Real, RecurrenceScalar};
use crate::series::{heun_coefficients, heun_recurrence, positive_roots, HeunSeries, RationalPoly, SignConvention};

/// Convention used unless a caller asks otherwise; it is the Frobenius series
/// of the Heun equation with a `+α/ξ` term.
pub const DEFAULT_CONVENTION: SignConvention = SignConvention::AlphaMinus;

const ROOT_REL_TOL: f64 = 1e-17;

/// Which closed form to evaluate for the oscillator energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyFormula {
    /// ω(n + |l| + 1) + Q²λ_m²/(8m) + k²/(2m); consistent with g = 2n.
    WithFieldShift,
    /// ω(n + |l| + 1) + k²/(2m).
    AxialOnly,
}

fn check_oscillator_qn(qn: &QuantumNumbers) -> Result<()> {
    if qn.l() == 0 {
        return Err(Error::GateViolation { l: 0, reason: GateReason::ZeroAngularMomentum });
    }
    if qn.n() == 0 {
        // a_1 ∝ α cannot vanish when α ≠ 0.
        return Err(Error::GroundStateViolation(0));
    }
    Ok(())
}

pub fn oscillator_energy<T: Real>(
    params: &SystemParams<T>,
    qn: &QuantumNumbers,
    omega: T,
    formula: EnergyFormula,
) -> Result<T> {
    check_oscillator_qn(qn)?;
    if !(omega > T::zero()) {
        return Err(Error::InvalidFrequency(omega.to_f64().unwrap_or(f64::NAN)));
    }
    let level = T::from_int(qn.n() as i64 + qn.abs_l() as i64 + 1);
    let base = omega * level + params.axial_energy();
    Ok(match formula {
        EnergyFormula::WithFieldShift => base + params.field_shift(),
        EnergyFormula::AxialOnly => base,
    })
}

/// a_{n+1} as an exact polynomial in α, with g = 2n.
pub fn quantization_polynomial(theta: u32, n: u32, convention: SignConvention) -> RationalPoly {
    let g = RationalPoly::from_integer(2 * n as i64);
    let coeffs = heun_recurrence(theta, &g, &RationalPoly::x(), n as usize + 1, convention);
    coeffs.into_iter().last().unwrap()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySolution<T> {
    pub qn: QuantumNumbers,
    pub convention: SignConvention,
    /// Positive roots of a_{n+1}(α), ascending. The full root set is these
    /// and their negatives.
    pub alpha_roots: Vec<T>,
    /// ω = δ²/(mα²) per root, descending.
    pub omegas: Vec<T>,
    /// a_{n+1}(α) scaled to coprime integers, lowest power first.
    pub polynomial: Vec<BigInt>,
}

impl<T: Real> FrequencySolution<T> {
    /// |a_{n+1}(α)| / Σ|c_i||α|^i, evaluated in binary64 from the integer
    /// coefficients.
    pub fn relative_residual(&self, alpha: f64) -> f64 {
        let mut value = 0.0;
        let mut scale = 0.0;
        for c in self.polynomial.iter().rev() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            value = value * alpha + c;
            scale = scale * alpha.abs() + c.abs();
        }
        value.abs() / scale
    }
}

pub fn allowed_frequencies<T: Real>(params: &SystemParams<T>, qn: &QuantumNumbers) -> Result<FrequencySolution<T>> {
    allowed_frequencies_with(params, qn, DEFAULT_CONVENTION)
}

pub fn allowed_frequencies_with<T: Real>(
    params: &SystemParams<T>,
    qn: &QuantumNumbers,
    convention: SignConvention,
) -> Result<FrequencySolution<T>> {
    check_oscillator_qn(qn)?;
    let theta = theta_for(qn);
    let poly = quantization_polynomial(theta, qn.n(), convention);
    // a_{n+1} has the parity of n + 1, so it is α^{(n+1) mod 2} · q(α²).
    let offset = ((qn.n() + 1) % 2) as usize;
    let in_s = poly.compress_powers(offset, 2).expect("quantization polynomial has definite parity");
    let s_roots = positive_roots(&in_s, ROOT_REL_TOL);
    if s_roots.is_empty() {
        return Err(Error::NoAdmissibleFrequency { n: qn.n(), l: qn.l() as i64 });
    }
    let delta = compute_delta(params, qn);
    let delta_sq = delta * delta;
    let alpha_roots: Vec<T> = s_roots.iter().map(|&s| T::lit(s).sqrt()).collect();
    let omegas: Vec<T> = s_roots.iter().map(|&s| delta_sq / (params.mass() * T::lit(s))).collect();
    Ok(FrequencySolution { qn: *qn, convention, alpha_roots, omegas, polynomial: poly.integer_scaled() })
}

/// The frequency picked when several are allowed.
pub const SELECTION_RULE: &str = "largest_omega";

#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorState<T> {
    pub qn: QuantumNumbers,
    pub omega: T,
    pub derived: OscillatorDerived<T>,
    pub energy_with_shift: T,
    pub energy_axial_only: T,
    /// Number of allowed frequencies this state was selected from.
    pub candidates: usize,
}

impl<T: Real + RecurrenceScalar> OscillatorState<T> {
    /// The Heun polynomial of this state in the given convention, with g = 2n
    /// imposed exactly.
    pub fn heun_series(&self, convention: SignConvention) -> Result<HeunSeries<T>> {
        let n = self.qn.n() as usize;
        heun_coefficients(
            self.derived.theta,
            T::from_int(2 * n as i64),
            self.derived.alpha,
            n + 2,
            convention,
        )
    }
}

/// Builds the state (n, l) at a given frequency, assumed allowed.
pub fn oscillator_state<T: Real + RecurrenceScalar>(
    params: &SystemParams<T>,
    qn: &QuantumNumbers,
    omega: T,
) -> Result<OscillatorState<T>> {
    let energy_with_shift = oscillator_energy(params, qn, omega, EnergyFormula::WithFieldShift)?;
    let energy_axial_only = oscillator_energy(params, qn, omega, EnergyFormula::AxialOnly)?;
    let at_omega = params.without_omega().with_omega(omega)?;
    let mut derived = compute_oscillator_params(&at_omega, qn, energy_with_shift)?;
    let n = qn.n() as usize;
    let series = heun_coefficients(derived.theta, T::from_int(2 * n as i64), derived.alpha, n + 1, DEFAULT_CONVENTION)?;
    derived.heun_coeffs = series.coeffs;
    Ok(OscillatorState { qn: *qn, omega, derived, energy_with_shift, energy_axial_only, candidates: 1 })
}

/// One (n, l) entry of a sweep; failures are kept per entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry<T> {
    pub n: u32,
    pub l: i32,
    pub state: Result<OscillatorState<T>>,
}

/// Every allowed (n, l) with 1 ≤ n ≤ n_max, each at its own largest allowed
/// frequency. Sorted by (n, l).
pub fn constrained_spectrum<T: Real + RecurrenceScalar>(
    params: &SystemParams<T>,
    n_max: u32,
    l_values: &[i32],
) -> Result<Vec<SpectrumEntry<T>>> {
    if n_max < 1 {
        return Err(Error::GroundStateViolation(n_max));
    }
    if l_values.contains(&0) {
        return Err(Error::GateViolation { l: 0, reason: GateReason::ZeroAngularMomentum });
    }
    let mut ls = l_values.to_vec();
    ls.sort_unstable();
    ls.dedup();
    let mut out = Vec::new();
    for n in 1..=n_max {
        for &l in &ls {
            out.push(SpectrumEntry { n, l, state: constrained_state(params, n, l) });
        }
    }
    Ok(out)
}

pub fn constrained_state<T: Real + RecurrenceScalar>(params: &SystemParams<T>, n: u32, l: i32) -> Result<OscillatorState<T>> {
    let qn = QuantumNumbers::new(n, l)?;
    let solution = allowed_frequencies(params, &qn)?;
    let omega = solution.omegas[0];
    let mut state = oscillator_state(params, &qn, omega)?;
    state.candidates = solution.omegas.len();
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::heun_residual;
    use crate::series::residual_samples;
    use approx::assert_relative_eq;

    fn p() -> SystemParams<f64> {
        SystemParams::new(1.0, 1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn energy_examples() {
        let qn = QuantumNumbers::new(1, 1).unwrap();
        let e = oscillator_energy(&p(), &qn, 1.0 / 6.0, EnergyFormula::WithFieldShift).unwrap();
        assert_relative_eq!(e, 0.625, max_relative = 1e-15);
        let e = oscillator_energy(&p(), &qn, 1.0 / 6.0, EnergyFormula::AxialOnly).unwrap();
        assert_relative_eq!(e, 0.5, max_relative = 1e-15);
        let err = oscillator_energy(&p(), &QuantumNumbers::new(0, 1).unwrap(), 1.0, EnergyFormula::AxialOnly);
        assert_eq!(err.unwrap_err(), Error::GroundStateViolation(0));
    }

    #[test]
    fn quantization_polynomials_for_the_first_two_levels() {
        // n = 1: a_2 ∝ α² − 2θ; n = 2: a_3 ∝ α(α² − 8θ − 4).
        let p1 = quantization_polynomial(3, 1, SignConvention::AlphaPlus).integer_scaled();
        assert_eq!(p1, vec![BigInt::from(-6), BigInt::from(0), BigInt::from(1)]);
        let p2 = quantization_polynomial(3, 2, SignConvention::AlphaPlus).integer_scaled();
        assert_eq!(p2, vec![BigInt::from(0), BigInt::from(-28), BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn frequency_examples() {
        let s = allowed_frequencies(&p(), &QuantumNumbers::new(1, 1).unwrap()).unwrap();
        assert_eq!(s.alpha_roots.len(), 1);
        assert_relative_eq!(s.alpha_roots[0] * s.alpha_roots[0], 6.0, max_relative = 1e-15);
        assert_relative_eq!(s.omegas[0], 1.0 / 6.0, max_relative = 1e-15);

        let s = allowed_frequencies(&p(), &QuantumNumbers::new(1, 2).unwrap()).unwrap();
        assert_relative_eq!(s.omegas[0], 0.4, max_relative = 1e-15);

        let s = allowed_frequencies(&p(), &QuantumNumbers::new(2, 1).unwrap()).unwrap();
        assert_eq!(s.omegas.len(), 1);
        assert_relative_eq!(s.omegas[0], 1.0 / 28.0, max_relative = 1e-15);
    }

    #[test]
    fn frequencies_need_n_at_least_one() {
        let err = allowed_frequencies(&p(), &QuantumNumbers::new(0, 1).unwrap()).unwrap_err();
        assert_eq!(err, Error::GroundStateViolation(0));
    }

    #[test]
    fn roots_reevaluate_to_zero() {
        for n in 1..=6 {
            for l in 1..=4 {
                let s = allowed_frequencies(&p(), &QuantumNumbers::new(n, l).unwrap()).unwrap();
                for w in s.omegas.windows(2) {
                    assert!(w[0] > w[1]);
                }
                for a in &s.alpha_roots {
                    assert!(*a > 0.0);
                    assert!(s.relative_residual(*a) <= 1e-12, "n={n} l={l} alpha={a}");
                    assert!(s.relative_residual(-*a) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn sweep_chains_frequency_and_energy() {
        let entries = constrained_spectrum(&p(), 2, &[1]).unwrap();
        assert_eq!(entries.len(), 2);
        let s1 = entries[0].state.as_ref().unwrap();
        assert_relative_eq!(s1.omega, 1.0 / 6.0, max_relative = 1e-15);
        assert_relative_eq!(s1.energy_axial_only, 0.5, max_relative = 1e-15);
        let s2 = entries[1].state.as_ref().unwrap();
        assert_relative_eq!(s2.omega, 1.0 / 28.0, max_relative = 1e-15);
        assert_relative_eq!(s2.energy_axial_only, 4.0 / 28.0, max_relative = 1e-15);
    }

    #[test]
    fn sweep_is_even_in_l() {
        let pos = constrained_state(&p(), 1, 1).unwrap();
        let neg = constrained_state(&p(), 1, -1).unwrap();
        assert_eq!(pos.omega, neg.omega);
        assert_eq!(pos.energy_with_shift, neg.energy_with_shift);
        assert_eq!(pos.energy_axial_only, neg.energy_axial_only);
    }

    #[test]
    fn sweep_rejects_l_zero() {
        assert!(constrained_spectrum(&p(), 2, &[0, 1]).is_err());
    }

    #[test]
    fn state_quantities_are_consistent() {
        let s = constrained_state(&p(), 2, 2).unwrap();
        assert_relative_eq!(s.derived.g_param, 4.0, max_relative = 1e-12);
        let series = s.heun_series(DEFAULT_CONVENTION).unwrap();
        assert_eq!(series.truncation_degree, Some(2));
        assert!(heun_residual(&series, &residual_samples(5.0, 20)) <= 1e-10);
    }
}
