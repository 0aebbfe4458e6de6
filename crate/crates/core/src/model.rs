//! Physical parameters, quantum numbers and the algebraic maps between them.
//!
//! Natural units ħ = c = 1 throughout. The radial problem is
//!
//! ```text
//! R'' + R'/ρ − l²R/ρ² − δR/ρ − m²ω²ρ²R + ζ²R = 0,
//! ζ² = 2mE − k² − Q²λ_m²/4,   δ = Q λ_m l,
//! ```
//!
//! with the oscillator term present only in oscillator mode.

use crate::error::{Error, GateReason, Result};
use crate::scalar::Real;

/// Constants of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams<T> {
    mass: T,
    quadrupole: T,
    lambda_m: T,
    k_axial: T,
    omega: Option<T>,
}

impl<T: Real> SystemParams<T> {
    pub fn new(mass: T, quadrupole: T, lambda_m: T, k_axial: T) -> Result<Self> {
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(invalid("mass", "must be > 0"));
        }
        if !(quadrupole > T::zero()) || !quadrupole.is_finite() {
            return Err(invalid("quadrupole", "must be > 0"));
        }
        if lambda_m == T::zero() || !lambda_m.is_finite() {
            return Err(invalid("lambda_m", "must be nonzero"));
        }
        if !k_axial.is_finite() {
            return Err(invalid("k_axial", "must be finite"));
        }
        Ok(Self { mass, quadrupole, lambda_m, k_axial, omega: None })
    }

    /// Attaches an oscillator frequency. Zero is storable; oscillator
    /// operations reject it.
    pub fn with_omega(mut self, omega: T) -> Result<Self> {
        if !(omega >= T::zero()) || !omega.is_finite() {
            return Err(invalid("omega", "must be >= 0"));
        }
        self.omega = Some(omega);
        Ok(self)
    }

    pub fn without_omega(mut self) -> Self {
        self.omega = None;
        self
    }

    pub fn mass(&self) -> T {
        self.mass
    }
    pub fn quadrupole(&self) -> T {
        self.quadrupole
    }
    pub fn lambda_m(&self) -> T {
        self.lambda_m
    }
    pub fn k_axial(&self) -> T {
        self.k_axial
    }
    pub fn omega(&self) -> Option<T> {
        self.omega
    }

    /// The frequency for oscillator operations, which must be present and > 0.
    pub fn require_omega(&self) -> Result<T> {
        match self.omega {
            Some(w) if w > T::zero() => Ok(w),
            Some(w) => Err(Error::InvalidFrequency(w.to_f64().unwrap_or(f64::NAN))),
            None => Err(Error::InvalidFrequency(0.0)),
        }
    }

    /// Constant shift Q²λ_m²/(8m) produced by the diamagnetic-like term.
    pub fn field_shift(&self) -> T {
        let ql = self.quadrupole * self.lambda_m;
        ql * ql / (T::lit(8.0) * self.mass)
    }

    /// Free axial kinetic energy k²/(2m).
    pub fn axial_energy(&self) -> T {
        self.k_axial * self.k_axial / (T::lit(2.0) * self.mass)
    }

    /// Energy above which the Coulomb-type problem has no bound states.
    pub fn continuum_threshold(&self) -> T {
        self.axial_energy() + self.field_shift()
    }
}

fn invalid(field: &'static str, reason: &str) -> Error {
    Error::InvalidParams { field, reason: reason.to_string() }
}

/// Radial index `n` and angular index `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    n: u32,
    l: i32,
}

impl QuantumNumbers {
    /// Checked constructor for spectrum work: rejects `l = 0`.
    pub fn new(n: u32, l: i32) -> Result<Self> {
        if l == 0 {
            return Err(Error::GateViolation { l: 0, reason: GateReason::ZeroAngularMomentum });
        }
        Ok(Self { n, l })
    }

    /// Unchecked constructor for diagnostics; admits `l = 0`.
    pub fn diagnostic(n: u32, l: i32) -> Self {
        Self { n, l }
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn l(&self) -> i32 {
        self.l
    }
    pub fn abs_l(&self) -> u32 {
        self.l.unsigned_abs()
    }
}

/// Outcome of the attractive-potential gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    pub reason: Option<GateReason>,
}

impl Admissibility {
    pub fn into_result(self, l: i32) -> Result<()> {
        match self.reason {
            None => Ok(()),
            Some(reason) => Err(Error::GateViolation { l: l as i64, reason }),
        }
    }
}

/// δ = Q λ_m l. Accepts `l = 0`.
pub fn compute_delta<T: Real>(params: &SystemParams<T>, qn: &QuantumNumbers) -> T {
    delta_for_l(params, qn.l)
}

pub(crate) fn delta_for_l<T: Real>(params: &SystemParams<T>, l: i32) -> T {
    params.quadrupole * params.lambda_m * T::from_int(l as i64)
}

/// The δ/ρ term is attractive only when `λ_m · l < 0`.
pub fn is_bound_state_admissible<T: Real>(params: &SystemParams<T>, l: i32) -> Admissibility {
    let reason = if l == 0 {
        Some(GateReason::ZeroAngularMomentum)
    } else if (params.lambda_m > T::zero()) == (l > 0) {
        Some(GateReason::RepulsiveSign)
    } else {
        None
    };
    Admissibility { admissible: reason.is_none(), reason }
}

/// Decay constant τ of the Coulomb-type bound state, from the termination
/// condition |l| + ½ − |δ|/(2τ) = −n.
pub fn compute_tau<T: Real>(params: &SystemParams<T>, qn: &QuantumNumbers) -> Result<T> {
    is_bound_state_admissible(params, qn.l).into_result(qn.l)?;
    let delta = compute_delta(params, qn).abs();
    let denom = T::from_int(2 * qn.n as i64 + 2 * qn.abs_l() as i64 + 1);
    Ok(delta / denom)
}

/// ζ² = 2mE − k² − Q²λ_m²/4.
pub fn zeta_sq_from_energy<T: Real>(params: &SystemParams<T>, energy: T) -> T {
    let two = T::lit(2.0);
    let ql = params.quadrupole * params.lambda_m;
    two * params.mass * energy - params.k_axial * params.k_axial - ql * ql / T::lit(4.0)
}

/// Inverse of [`zeta_sq_from_energy`].
pub fn energy_from_zeta_sq<T: Real>(params: &SystemParams<T>, zeta_sq: T) -> T {
    let ql = params.quadrupole * params.lambda_m;
    (zeta_sq + params.k_axial * params.k_axial + ql * ql / T::lit(4.0)) / (T::lit(2.0) * params.mass)
}

/// Derived scalars of a Coulomb-type bound state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombDerived<T> {
    /// Signed δ; bound-state formulas use |δ|.
    pub delta: T,
    pub tau: T,
    pub zeta_sq: T,
    pub kummer_a: T,
    pub kummer_b: T,
}

pub fn coulomb_derived<T: Real>(params: &SystemParams<T>, qn: &QuantumNumbers) -> Result<CoulombDerived<T>> {
    let tau = compute_tau(params, qn)?;
    let delta = compute_delta(params, qn);
    let abs_l = T::from_int(qn.abs_l() as i64);
    let half = T::lit(0.5);
    Ok(CoulombDerived {
        delta,
        tau,
        zeta_sq: -(tau * tau),
        kummer_a: abs_l + half - delta.abs() / (T::lit(2.0) * tau),
        kummer_b: T::lit(2.0) * abs_l + T::one(),
    })
}

/// τ of a bound state with the given energy; scattering energies are not
/// handled.
pub fn tau_from_energy<T: Real>(params: &SystemParams<T>, energy: T) -> Result<T> {
    let zeta_sq = zeta_sq_from_energy(params, energy);
    if zeta_sq >= T::zero() {
        return Err(Error::NotSupported(format!(
            "scattering state (zeta^2 = {zeta_sq}) requested; only bound states are handled"
        )));
    }
    Ok((-zeta_sq).sqrt())
}

/// Derived scalars of an oscillator-mode state.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorDerived<T> {
    /// θ = 2|l| + 1.
    pub theta: u32,
    /// g = ζ²/(mω) − 2 − 2|l|.
    pub g_param: T,
    /// α = δ/√(mω), signed.
    pub alpha: T,
    pub zeta_sq: T,
    /// Filled by the series module; empty here.
    pub heun_coeffs: Vec<T>,
}

pub fn theta_for(qn: &QuantumNumbers) -> u32 {
    2 * qn.abs_l() + 1
}

pub fn compute_oscillator_params<T: Real>(
    params: &SystemParams<T>,
    qn: &QuantumNumbers,
    energy: T,
) -> Result<OscillatorDerived<T>> {
    let omega = params.require_omega()?;
    if qn.l == 0 {
        return Err(Error::GateViolation { l: 0, reason: GateReason::ZeroAngularMomentum });
    }
    let m_omega = params.mass * omega;
    let zeta_sq = zeta_sq_from_energy(params, energy);
    let abs_l = T::from_int(qn.abs_l() as i64);
    Ok(OscillatorDerived {
        theta: theta_for(qn),
        g_param: zeta_sq / m_omega - T::lit(2.0) - T::lit(2.0) * abs_l,
        alpha: compute_delta(params, qn) / m_omega.sqrt(),
        zeta_sq,
        heun_coeffs: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(m: f64, q: f64, lm: f64, k: f64) -> SystemParams<f64> {
        SystemParams::new(m, q, lm, k).unwrap()
    }

    #[test]
    fn delta_is_a_plain_product() {
        assert_eq!(compute_delta(&params(1.0, 1.0, 2.0, 0.0), &QuantumNumbers::diagnostic(0, -1)), -2.0);
        assert_eq!(compute_delta(&params(1.0, 1.0, 1.0, 0.0), &QuantumNumbers::diagnostic(0, 0)), 0.0);
        assert_eq!(compute_delta(&params(1.0, 2.0, 3.0, 0.0), &QuantumNumbers::diagnostic(0, 2)), 12.0);
    }

    #[test]
    fn tau_examples() {
        let p = params(1.0, 1.0, 2.0, 0.0);
        let t0 = compute_tau(&p, &QuantumNumbers::new(0, -1).unwrap()).unwrap();
        assert_relative_eq!(t0, 2.0 / 3.0, max_relative = 1e-15);
        let t1 = compute_tau(&p, &QuantumNumbers::new(1, -1).unwrap()).unwrap();
        assert_relative_eq!(t1, 0.4, max_relative = 1e-15);

        let p = params(1.0, 1.0, 1.0, 0.0);
        let err = compute_tau(&p, &QuantumNumbers::diagnostic(0, 0)).unwrap_err();
        assert_eq!(err, Error::GateViolation { l: 0, reason: GateReason::ZeroAngularMomentum });
    }

    #[test]
    fn gate_examples() {
        let a = is_bound_state_admissible(&params(1.0, 1.0, 1.0, 0.0), -3);
        assert!(a.admissible);
        let a = is_bound_state_admissible(&params(1.0, 1.0, 1.0, 0.0), 0);
        assert!(!a.admissible);
        assert_eq!(a.reason.unwrap().as_str(), "l = 0");
        let a = is_bound_state_admissible(&params(1.0, 1.0, -2.0, 0.0), -1);
        assert!(!a.admissible);
        assert_eq!(a.reason.unwrap().as_str(), "repulsive sign");
    }

    #[test]
    fn checked_quantum_numbers_reject_zero_l() {
        assert!(QuantumNumbers::new(3, 0).is_err());
        assert_eq!(QuantumNumbers::diagnostic(3, 0).l(), 0);
    }

    #[test]
    fn invalid_params_name_their_field() {
        let err = SystemParams::new(1.0, -1.0, 1.0, 0.0).unwrap_err();
        assert_eq!(err, Error::InvalidParams { field: "quadrupole", reason: "must be > 0".into() });
        assert!(SystemParams::new(0.0, 1.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn oscillator_params_at_the_first_allowed_frequency() {
        let p = params(1.0, 1.0, 1.0, 0.0).with_omega(1.0 / 6.0).unwrap();
        let d = compute_oscillator_params(&p, &QuantumNumbers::new(1, 1).unwrap(), 0.625).unwrap();
        assert_relative_eq!(d.zeta_sq, 1.0, max_relative = 1e-15);
        assert_relative_eq!(d.g_param, 2.0, max_relative = 1e-14);
        assert_eq!(d.theta, 3);
        assert_relative_eq!(d.alpha, 6.0f64.sqrt(), max_relative = 1e-15);
        assert!(d.heun_coeffs.is_empty());
    }

    #[test]
    fn oscillator_params_theta_and_alpha() {
        let p = params(1.0, 1.0, 1.0, 0.0).with_omega(1.0).unwrap();
        let d = compute_oscillator_params(&p, &QuantumNumbers::new(1, 2).unwrap(), 3.7).unwrap();
        assert_eq!(d.theta, 5);
        assert_eq!(d.alpha, 2.0);
    }

    #[test]
    fn oscillator_params_reject_zero_frequency() {
        let p = params(1.0, 1.0, 1.0, 0.0).with_omega(0.0).unwrap();
        let err = compute_oscillator_params(&p, &QuantumNumbers::new(1, 1).unwrap(), 1.0).unwrap_err();
        assert!(matches!(err, Error::InvalidFrequency(_)));
        let p = params(1.0, 1.0, 1.0, 0.0);
        assert!(compute_oscillator_params(&p, &QuantumNumbers::new(1, 1).unwrap(), 1.0).is_err());
    }

    #[test]
    fn scattering_energies_are_not_supported() {
        let p = params(1.0, 1.0, 2.0, 0.0);
        let err = tau_from_energy(&p, 0.6).unwrap_err();
        assert!(matches!(err, Error::NotSupported(_)));
        assert_relative_eq!(tau_from_energy(&p, 0.42).unwrap(), 0.4, max_relative = 1e-12);
    }

    #[test]
    fn works_in_single_precision() {
        let p = SystemParams::<f32>::new(1.0, 1.0, 2.0, 0.0).unwrap();
        let t = compute_tau(&p, &QuantumNumbers::new(0, -1).unwrap()).unwrap();
        assert!((t - 2.0 / 3.0).abs() < 1e-6);
    }
}
