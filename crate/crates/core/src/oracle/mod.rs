//! Finite-difference eigensolver for the radial equations, used as an
//! independent check on the closed-form spectra. Nothing here touches the
//! series solutions.
//!
//! With u = √ρ R the radial equation becomes
//!
//! ```text
//! −u'' + [(l² − ¼)/ρ² + δ/ρ + m²ω²ρ²] u = ζ² u
//! ```
//!
//! on (0, ∞), discretized with three-point differences on a uniform grid and
//! Dirichlet conditions one step beyond each end. The operator eigenvalues
//! are ζ² directly.

pub mod sturm;
pub mod verify;

pub use sturm::{count_nodes, inverse_iteration, kth_eigenvalue, smallest_eigenvalues, sturm_count};
pub use verify::{
    coulomb_rho_max, oscillator_rho_max, verify_eigenvalue, verify_state, verify_state_with, GridSpec, VerificationRecord,
    VerifyMode,
    DEFAULT_POINTS, RATIO_RANGE, REL_TOL,
};

use crate::error::{Error, Result};
use crate::model::{compute_delta, QuantumNumbers, SystemParams};
use crate::scalar::Real;

/// Minimum number of grid points.
pub const MIN_POINTS: usize = 500;

/// Uniform grid ρ_i = (i + 1) h, i = 0 … n_points − 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid<T> {
    pub rho_min: T,
    pub rho_max: T,
    pub n_points: usize,
    pub h: T,
}

impl<T: Real> RadialGrid<T> {
    pub fn new(rho_max: T, n_points: usize) -> Result<Self> {
        if n_points < MIN_POINTS {
            return Err(Error::GridError(format!("n_points = {n_points} below the minimum {MIN_POINTS}")));
        }
        if !(rho_max > T::zero()) || !rho_max.is_finite() {
            return Err(Error::GridError(format!("rho_max = {rho_max} must be positive and finite")));
        }
        let h = rho_max / T::from_int(n_points as i64);
        Ok(Self { rho_min: h, rho_max, n_points, h })
    }

    pub fn point(&self, i: usize) -> T {
        self.h * T::from_int(i as i64 + 1)
    }

    /// Requires ρ_max ≥ 25/τ.
    pub fn check_coulomb_coverage(&self, tau: T) -> Result<()> {
        let need = T::lit(25.0) / tau;
        if self.rho_max < need {
            return Err(Error::GridError(format!("rho_max = {} < 25/tau = {need}", self.rho_max)));
        }
        Ok(())
    }

    /// Requires ρ_max ≥ 8/√(mω).
    pub fn check_oscillator_coverage(&self, mass: T, omega: T) -> Result<()> {
        let need = T::lit(8.0) / (mass * omega).sqrt();
        if self.rho_max < need {
            return Err(Error::GridError(format!("rho_max = {} < 8/sqrt(m omega) = {need}", self.rho_max)));
        }
        Ok(())
    }
}

/// Which radial problem to discretize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    Coulomb,
    Oscillator,
}

impl PotentialKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PotentialKind::Coulomb => "coulomb",
            PotentialKind::Oscillator => "oscillator",
        }
    }
}

/// Symmetric tridiagonal matrix of −d²/dρ² + V_eff.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveOperator<T> {
    pub grid: RadialGrid<T>,
    pub kind: PotentialKind,
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> EffectiveOperator<T> {
    /// What the operator eigenvalues represent.
    pub const EIGENVALUE_MEANING: &'static str = "zeta_sq";

    pub fn smallest(&self, count: usize) -> Result<Vec<T>> {
        smallest_eigenvalues(&self.diag, &self.off, count, Self::abs_tol())
    }

    pub fn eigenvalue(&self, index: usize) -> Result<T> {
        kth_eigenvalue(&self.diag, &self.off, index, Self::abs_tol())
    }

    /// Eigenvalue and unit eigenvector on the grid points.
    pub fn eigenpair(&self, index: usize) -> Result<(T, Vec<T>)> {
        let value = self.eigenvalue(index)?;
        Ok((value, inverse_iteration(&self.diag, &self.off, value)))
    }

    pub fn count_below(&self, x: T) -> usize {
        sturm_count(&self.diag, &self.off, x)
    }

    fn abs_tol() -> T {
        T::tol(1e-13)
    }
}

pub fn build_effective_operator<T: Real>(
    params: &SystemParams<T>,
    l: i32,
    kind: PotentialKind,
    omega: Option<T>,
    grid: &RadialGrid<T>,
) -> Result<EffectiveOperator<T>> {
    let delta = compute_delta(params, &QuantumNumbers::diagnostic(0, l));
    let confinement = match kind {
        PotentialKind::Coulomb => T::zero(),
        PotentialKind::Oscillator => match omega {
            Some(w) if w > T::zero() => params.mass() * w,
            Some(w) => return Err(Error::InvalidFrequency(w.to_f64().unwrap_or(f64::NAN))),
            None => return Err(Error::InvalidFrequency(0.0)),
        },
    };
    let lsq = T::from_int(l as i64 * l as i64);
    let centrifugal = lsq - T::lit(0.25);
    let inv_h2 = (grid.h * grid.h).recip();
    let diag = (0..grid.n_points)
        .map(|i| {
            let rho = grid.point(i);
            let mw_rho = confinement * rho;
            T::lit(2.0) * inv_h2 + centrifugal / (rho * rho) + delta / rho + mw_rho * mw_rho
        })
        .collect();
    let off = vec![-inv_h2; grid.n_points - 1];
    Ok(EffectiveOperator { grid: *grid, kind, diag, off })
}

/// Lowest eigenvalues of one radial problem, with optional eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericalSpectrum<T> {
    pub grid: RadialGrid<T>,
    pub kind: PotentialKind,
    /// ζ² values, ascending.
    pub eigenvalues: Vec<T>,
    pub eigenvectors: Option<Vec<Vec<T>>>,
}

impl<T: Real> NumericalSpectrum<T> {
    /// Eigenvalues with ζ² < 0, i.e. bound states of the Coulomb problem.
    pub fn bound(&self) -> Vec<T> {
        self.eigenvalues.iter().copied().filter(|e| *e < T::zero()).collect()
    }
}

pub fn numerical_spectrum<T: Real>(
    params: &SystemParams<T>,
    l: i32,
    kind: PotentialKind,
    omega: Option<T>,
    grid: &RadialGrid<T>,
    count: usize,
    with_vectors: bool,
) -> Result<NumericalSpectrum<T>> {
    let op = build_effective_operator(params, l, kind, omega, grid)?;
    let eigenvalues = op.smallest(count)?;
    let eigenvectors =
        with_vectors.then(|| eigenvalues.iter().map(|e| inverse_iteration(&op.diag, &op.off, *e)).collect());
    Ok(NumericalSpectrum { grid: *grid, kind, eigenvalues, eigenvectors })
}
