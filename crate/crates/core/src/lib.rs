//! Bound-state spectra of a neutral particle with an electric quadrupole
//! moment in a magnetic field, for the induced Coulomb-type potential and
//! for an added two-dimensional harmonic confinement.
//!
//! Units are natural (ħ = c = 1). Everything is generic over the float type
//! through [`Real`]; the `F64`/`F32` aliases below fix it.

pub mod coulomb;
pub mod error;
pub mod model;
pub mod oracle;
pub mod oscillator;
pub mod quadrature;
pub mod scalar;
pub mod series;

pub use coulomb::{coulomb_energy, coulomb_state, coulomb_wavefunction, log_spaced, CoulombProfile, CoulombState};
pub use error::{Error, GateReason, Result};
pub use model::{
    compute_delta, compute_oscillator_params, compute_tau, coulomb_derived, energy_from_zeta_sq,
    is_bound_state_admissible, tau_from_energy, theta_for, zeta_sq_from_energy, Admissibility, CoulombDerived,
    OscillatorDerived, QuantumNumbers, SystemParams,
};
pub use oscillator::{
    allowed_frequencies, allowed_frequencies_with, constrained_spectrum, constrained_state, oscillator_energy,
    oscillator_state, quantization_polynomial, EnergyFormula, FrequencySolution, OscillatorState, SpectrumEntry,
    DEFAULT_CONVENTION,
};
pub use scalar::{Real, RecurrenceScalar};
pub use series::{CoulombTerm, HeunSeries, KummerSeries, SignConvention};

pub type SystemParamsF64 = SystemParams<f64>;
pub type SystemParamsF32 = SystemParams<f32>;
pub type CoulombStateF64 = CoulombState<f64>;
pub type CoulombStateF32 = CoulombState<f32>;
pub type OscillatorStateF64 = OscillatorState<f64>;
pub type FrequencySolutionF64 = FrequencySolution<f64>;
pub type KummerSeriesF64 = KummerSeries<f64>;
pub type HeunSeriesF64 = HeunSeries<f64>;
pub type VerificationRecordF64 = oracle::VerificationRecord<f64>;
