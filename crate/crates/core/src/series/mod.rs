//! Special-function series for the two radial problems: Kummer's ₁F₁ for the
//! Coulomb-type states and the biconfluent Heun Frobenius series for the
//! oscillator states, plus the exact polynomial machinery used to solve
//! termination conditions.

pub mod heun;
pub mod kummer;
pub mod poly;
pub mod roots;

pub use heun::{
    heun_coefficients, heun_recurrence, heun_residual, heun_residual_for, residual_samples, CoulombTerm,
    HeunSeries, HeunValue, SignConvention,
};
pub use kummer::{kummer_eval, kummer_eval_with_derivative, KummerSeries};
pub use poly::RationalPoly;
pub use roots::positive_roots;
