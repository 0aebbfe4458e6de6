//! Two-grid verification of an analytic ζ² against the finite-difference
//! operator, with Richardson extrapolation of the h² leading error.

use crate::error::{Error, Result};
use crate::model::{compute_tau, QuantumNumbers, SystemParams};
use crate::scalar::Real;

use super::{build_effective_operator, PotentialKind, RadialGrid};

pub const DEFAULT_POINTS: usize = 20_000;
/// Maximum relative error of the extrapolated eigenvalue.
pub const REL_TOL: f64 = 1e-5;
/// Admissible err(h)/err(h/2) for a second-order scheme.
pub const RATIO_RANGE: (f64, f64) = (3.5, 4.5);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerifyMode {
    Coulomb,
    Oscillator,
}

impl VerifyMode {
    pub fn kind(self) -> PotentialKind {
        match self {
            VerifyMode::Coulomb => PotentialKind::Coulomb,
            VerifyMode::Oscillator => PotentialKind::Oscillator,
        }
    }
}

/// Radius for Coulomb runs; grows with the radial extent of higher states.
pub fn coulomb_rho_max<T: Real>(tau: T, n: u32, abs_l: u32) -> T {
    (T::lit(30.0) + T::from_int(4 * (n as i64 + abs_l as i64))) / tau
}

/// Radius for oscillator runs.
pub fn oscillator_rho_max<T: Real>(mass: T, omega: T) -> T {
    T::lit(30.0) / (mass * omega).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord<T> {
    pub kind: PotentialKind,
    pub n: u32,
    pub l: i32,
    pub omega: Option<T>,
    pub eigen_index: usize,
    /// Points of the coarse and fine grid.
    pub grid_points: (usize, usize),
    pub rho_max: T,
    pub analytic: T,
    pub coarse: T,
    pub fine: T,
    pub extrapolated: T,
    pub abs_error: T,
    pub rel_error: T,
    /// (coarse − analytic) / (fine − analytic).
    pub convergence_ratio: T,
    pub passed: bool,
}

/// Compares the `index`-th eigenvalue on grids of `points` and `2·points`
/// points over (0, rho_max] with `analytic`.
#[allow(clippy::too_many_arguments)]
pub fn verify_eigenvalue<T: Real>(
    params: &SystemParams<T>,
    n: u32,
    l: i32,
    kind: PotentialKind,
    omega: Option<T>,
    rho_max: T,
    points: usize,
    index: Option<usize>,
    analytic: T,
) -> Result<VerificationRecord<T>> {
    let coarse_grid = RadialGrid::new(rho_max, points)?;
    let fine_grid = RadialGrid::new(rho_max, 2 * points)?;
    let coarse_op = build_effective_operator(params, l, kind, omega, &coarse_grid)?;
    let index = match index {
        Some(i) => i,
        None => {
            let candidates = coarse_op.smallest(n as usize + 2)?;
            nearest(&candidates, analytic)
        }
    };
    let coarse = coarse_op.eigenvalue(index)?;
    drop(coarse_op);
    let fine = build_effective_operator(params, l, kind, omega, &fine_grid)?.eigenvalue(index)?;

    let extrapolated = (T::lit(4.0) * fine - coarse) / T::lit(3.0);
    let abs_error = (extrapolated - analytic).abs();
    let rel_error = abs_error / analytic.abs();
    let convergence_ratio = (coarse - analytic) / (fine - analytic);
    let (lo, hi) = RATIO_RANGE;
    let passed = rel_error <= T::lit(REL_TOL) && convergence_ratio >= T::lit(lo) && convergence_ratio <= T::lit(hi);
    Ok(VerificationRecord {
        kind,
        n,
        l,
        omega,
        eigen_index: index,
        grid_points: (points, 2 * points),
        rho_max,
        analytic,
        coarse,
        fine,
        extrapolated,
        abs_error,
        rel_error,
        convergence_ratio,
        passed,
    })
}

fn nearest<T: Real>(values: &[T], target: T) -> usize {
    values
        .iter()
        .enumerate()
        .fold((0, T::infinity()), |(bi, bd), (i, v)| {
            let d = (*v - target).abs();
            if d < bd {
                (i, d)
            } else {
                (bi, bd)
            }
        })
        .0
}

/// Grid choice for [`verify_state_with`]; unset fields use the defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub rho_max: Option<T>,
    pub points: Option<usize>,
}

impl<T> Default for GridSpec<T> {
    fn default() -> Self {
        Self { rho_max: None, points: None }
    }
}

/// Verifies the closed-form ζ² of a state: −τ² for Coulomb states (the n-th
/// eigenvalue at fixed l), 2mω(n + |l| + 1) for oscillator states (the
/// nearest of the lowest n + 2 eigenvalues, at the supplied frequency).
pub fn verify_state<T: Real>(
    params: &SystemParams<T>,
    qn: &QuantumNumbers,
    mode: VerifyMode,
    omega: Option<T>,
) -> Result<VerificationRecord<T>> {
    verify_state_with(params, qn, mode, omega, GridSpec::default())
}

pub fn verify_state_with<T: Real>(
    params: &SystemParams<T>,
    qn: &QuantumNumbers,
    mode: VerifyMode,
    omega: Option<T>,
    grid: GridSpec<T>,
) -> Result<VerificationRecord<T>> {
    let points = grid.points.unwrap_or(DEFAULT_POINTS);
    match mode {
        VerifyMode::Coulomb => {
            let tau = compute_tau(params, qn)?;
            let rho_max = grid.rho_max.unwrap_or_else(|| coulomb_rho_max(tau, qn.n(), qn.abs_l()));
            RadialGrid::new(rho_max, points)?.check_coulomb_coverage(tau)?;
            verify_eigenvalue(
                params,
                qn.n(),
                qn.l(),
                PotentialKind::Coulomb,
                None,
                rho_max,
                points,
                Some(qn.n() as usize),
                -(tau * tau),
            )
        }
        VerifyMode::Oscillator => {
            if qn.n() == 0 {
                return Err(Error::GroundStateViolation(0));
            }
            let omega = omega.or(params.omega()).ok_or(Error::InvalidFrequency(0.0))?;
            if !(omega > T::zero()) {
                return Err(Error::InvalidFrequency(omega.to_f64().unwrap_or(f64::NAN)));
            }
            let rho_max = grid.rho_max.unwrap_or_else(|| oscillator_rho_max(params.mass(), omega));
            RadialGrid::new(rho_max, points)?.check_oscillator_coverage(params.mass(), omega)?;
            let analytic =
                T::lit(2.0) * params.mass() * omega * T::from_int(qn.n() as i64 + qn.abs_l() as i64 + 1);
            verify_eigenvalue(
                params,
                qn.n(),
                qn.l(),
                PotentialKind::Oscillator,
                Some(omega),
                rho_max,
                points,
                None,
                analytic,
            )
        }
    }
}
