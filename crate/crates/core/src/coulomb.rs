//! Bound states of the induced Coulomb-type potential.
//!
//! With r = 2τρ the regular solution is R = e^{−r/2} r^{|l|} ₁F₁(a; 2|l|+1; r)
//! and square integrability forces a = |l| + ½ − |δ|/(2τ) = −n, giving
//!
//! ```text
//! E_{n,l} = −(Qλ_m l)² / (8m (n + |l| + ½)²) + k²/(2m) + Q²λ_m²/(8m).
//! ```

use crate::error::{Error, Result};
use crate::model::{coulomb_derived, is_bound_state_admissible, CoulombDerived, QuantumNumbers, SystemParams};
use crate::quadrature::integrate;
use crate::scalar::Real;
use crate::series::KummerSeries;

/// The normalization integral is cut at `RHO_CUT_EFOLDS / τ`, but never
/// beyond this radius.
pub const RHO_CUT_CAP: f64 = 1e6;
pub const RHO_CUT_EFOLDS: f64 = 40.0;
const NORM_REL_TOL: f64 = 1e-12;
const TAIL_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CoulombState<T> {
    pub qn: QuantumNumbers,
    pub derived: CoulombDerived<T>,
    pub energy: T,
    /// N with ∫₀^∞ |N R(ρ)|² ρ dρ = 1.
    pub radial_norm: T,
}

pub fn coulomb_energy<T: Real>(params: &SystemParams<T>, qn: &QuantumNumbers) -> Result<T> {
    is_bound_state_admissible(params, qn.l()).into_result(qn.l())?;
    let delta = params.quadrupole() * params.lambda_m() * T::from_int(qn.l() as i64);
    let shell = T::from_int(qn.n() as i64) + T::from_int(qn.abs_l() as i64) + T::lit(0.5);
    let binding = delta * delta / (T::lit(8.0) * params.mass() * shell * shell);
    Ok(params.axial_energy() + params.field_shift() - binding)
}

/// Unnormalized profile e^{−τρ}(2τρ)^{|l|} ₁F₁(−n; 2|l|+1; 2τρ).
#[derive(Debug, Clone)]
pub struct CoulombProfile<T> {
    tau: T,
    abs_l: u32,
    kummer: KummerSeries<T>,
}

impl<T: Real> CoulombProfile<T> {
    pub fn new(params: &SystemParams<T>, qn: &QuantumNumbers) -> Result<Self> {
        let derived = coulomb_derived(params, qn)?;
        let kummer = KummerSeries::polynomial(qn.n(), derived.kummer_b)?;
        Ok(Self { tau: derived.tau, abs_l: qn.abs_l(), kummer })
    }

    /// ₁F₁ coefficients; the last one is the exact zero closing the series.
    pub fn kummer(&self) -> &KummerSeries<T> {
        &self.kummer
    }

    pub fn tau(&self) -> T {
        self.tau
    }

    pub fn eval(&self, rho: T) -> T {
        let r = T::lit(2.0) * self.tau * rho;
        (-self.tau * rho).exp() * r.powi(self.abs_l as i32) * self.kummer.eval_poly(r).0
    }
}

/// N such that ∫₀^∞ |N·profile(ρ)|² ρ dρ = 1.
///
/// The integral runs over (0, ρ_cut] with ρ_cut = min(40/τ, 10⁶); the tail
/// beyond ρ_cut is bounded using the integrand's e^{−2τρ} ρ^{2(n+|l|)+1}
/// envelope and must be below 1e-12 of the integral.
pub fn normalize<T: Real, F: Fn(T) -> T>(profile: F, params: &SystemParams<T>, qn: &QuantumNumbers) -> Result<T> {
    let derived = coulomb_derived(params, qn)?;
    let tau = derived.tau;
    let rho_cut = (T::lit(RHO_CUT_EFOLDS) / tau).min(T::lit(RHO_CUT_CAP));
    let power = T::from_int(2 * (qn.n() as i64 + qn.abs_l() as i64) + 1);
    let integrand = |rho: T| {
        let v = profile(rho);
        v * v * rho
    };
    let result = integrate(integrand, T::zero(), rho_cut, T::tol(NORM_REL_TOL), T::zero(), 20_000)?;
    if !(result.value > T::zero()) {
        return Err(Error::QuadratureFailure("profile has zero norm".into()));
    }
    let decay = T::lit(2.0) * tau * rho_cut - power;
    if decay <= T::zero() {
        return Err(Error::QuadratureFailure(format!(
            "cutoff radius {rho_cut} too small to bound the tail (tau = {tau})"
        )));
    }
    let tail = integrand(rho_cut) * rho_cut / decay;
    if tail > T::tol(TAIL_REL_TOL) * result.value {
        return Err(Error::QuadratureFailure(format!(
            "tail bound {tail} exceeds {TAIL_REL_TOL} of the integral {}",
            result.value
        )));
    }
    Ok(result.value.sqrt().recip())
}

pub fn coulomb_state<T: Real>(params: &SystemParams<T>, qn: &QuantumNumbers) -> Result<CoulombState<T>> {
    let energy = coulomb_energy(params, qn)?;
    let derived = coulomb_derived(params, qn)?;
    let profile = CoulombProfile::new(params, qn)?;
    let radial_norm = normalize(|rho| profile.eval(rho), params, qn)?;
    Ok(CoulombState { qn: *qn, derived, energy, radial_norm })
}

/// Normalized R(ρ) at each sample.
pub fn coulomb_wavefunction<T: Real>(
    params: &SystemParams<T>,
    qn: &QuantumNumbers,
    rho_samples: &[T],
) -> Result<Vec<T>> {
    if let Some(bad) = rho_samples.iter().find(|r| !(**r > T::zero())) {
        return Err(Error::InvalidArgument(format!("sample rho = {bad} must be > 0")));
    }
    let profile = CoulombProfile::new(params, qn)?;
    let norm = normalize(|rho| profile.eval(rho), params, qn)?;
    Ok(rho_samples.iter().map(|&rho| norm * profile.eval(rho)).collect())
}

/// Number of sign changes in a sampled profile, skipping exact zeros.
pub fn count_sign_changes<T: Real>(values: &[T]) -> usize {
    let mut prev: Option<bool> = None;
    let mut changes = 0;
    for v in values {
        if *v == T::zero() {
            continue;
        }
        let pos = *v > T::zero();
        if prev.is_some_and(|p| p != pos) {
            changes += 1;
        }
        prev = Some(pos);
    }
    changes
}

/// `count` log-spaced radii on [lo, hi].
pub fn log_spaced<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    if count == 1 {
        return vec![lo];
    }
    let (ll, lh) = (lo.ln(), hi.ln());
    let step = (lh - ll) / T::from_int(count as i64 - 1);
    (0..count).map(|i| (ll + step * T::from_int(i as i64)).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::GateReason;
    use crate::model::{compute_tau, zeta_sq_from_energy};
    use approx::assert_relative_eq;

    fn p() -> SystemParams<f64> {
        SystemParams::new(1.0, 1.0, 2.0, 0.0).unwrap()
    }

    #[test]
    fn energy_examples() {
        let e0 = coulomb_energy(&p(), &QuantumNumbers::new(0, -1).unwrap()).unwrap();
        assert_relative_eq!(e0, 0.5 - 4.0 / 18.0, max_relative = 1e-15);
        let e1 = coulomb_energy(&p(), &QuantumNumbers::new(1, -1).unwrap()).unwrap();
        assert_relative_eq!(e1, 0.42, max_relative = 1e-15);
        let err = coulomb_energy(&p(), &QuantumNumbers::new(0, 1).unwrap()).unwrap_err();
        assert_eq!(err, Error::GateViolation { l: 1, reason: GateReason::RepulsiveSign });
    }

    #[test]
    fn energy_closes_the_zeta_chain() {
        let qn = QuantumNumbers::new(0, -1).unwrap();
        let e = coulomb_energy(&p(), &qn).unwrap();
        let tau = compute_tau(&p(), &qn).unwrap();
        assert_relative_eq!(zeta_sq_from_energy(&p(), e), -tau * tau, max_relative = 1e-14);
    }

    #[test]
    fn ground_state_norm_matches_gamma_closed_form() {
        // ∫ e^{−2τρ}(2τρ)^{2|l|} ρ dρ = Γ(2|l|+2)/(2τ)²
        let qn = QuantumNumbers::new(0, -1).unwrap();
        let profile = CoulombProfile::new(&p(), &qn).unwrap();
        let tau = 2.0 / 3.0;
        let exact: f64 = 6.0 / (2.0 * tau * 2.0 * tau);
        let n = normalize(|r| profile.eval(r), &p(), &qn).unwrap();
        assert_relative_eq!(n, 1.0 / exact.sqrt(), max_relative = 1e-10);
    }

    #[test]
    fn scaling_the_profile_scales_the_norm_inversely() {
        let qn = QuantumNumbers::new(2, -3).unwrap();
        let profile = CoulombProfile::new(&p(), &qn).unwrap();
        let n1 = normalize(|r| profile.eval(r), &p(), &qn).unwrap();
        let n7 = normalize(|r| 7.0 * profile.eval(r), &p(), &qn).unwrap();
        assert_relative_eq!(n7, n1 / 7.0, max_relative = 1e-12);
    }

    #[test]
    fn tiny_tau_fails_the_tail_bound() {
        let weak = SystemParams::new(1.0, 1e-9, 1.0, 0.0).unwrap();
        let qn = QuantumNumbers::new(0, -1).unwrap();
        let profile = CoulombProfile::new(&weak, &qn).unwrap();
        let err = normalize(|r| profile.eval(r), &weak, &qn).unwrap_err();
        assert!(matches!(err, Error::QuadratureFailure(_)));
    }

    #[test]
    fn wavefunction_vanishes_like_rho_to_the_abs_l() {
        let qn = QuantumNumbers::new(0, -1).unwrap();
        let r = coulomb_wavefunction(&p(), &qn, &[1e-6, 2e-6]).unwrap();
        assert!(r[0].abs() < 1e-5);
        assert_relative_eq!(r[1] / r[0], 2.0, max_relative = 1e-5);
    }

    #[test]
    fn n_equals_two_has_two_nodes() {
        let qn = QuantumNumbers::new(2, -1).unwrap();
        let tau = compute_tau(&p(), &qn).unwrap();
        let rho = log_spaced(1e-3 / tau, 60.0 / tau, 4000);
        let r = coulomb_wavefunction(&p(), &qn, &rho).unwrap();
        assert_eq!(count_sign_changes(&r), 2);
    }

    #[test]
    fn non_positive_samples_are_rejected() {
        let qn = QuantumNumbers::new(0, -1).unwrap();
        assert!(coulomb_wavefunction(&p(), &qn, &[0.0]).is_err());
    }
}
