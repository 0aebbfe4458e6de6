//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, and
//! eigenvectors by inverse iteration.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Number of eigenvalues strictly below `x` (negative pivots of the LDLᵀ
/// factorization of T − xI).
pub fn sturm_count<T: Real>(diag: &[T], off: &[T], x: T) -> usize {
    let guard = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut q = T::one();
    for i in 0..diag.len() {
        let coupling = if i == 0 { T::zero() } else { off[i - 1] * off[i - 1] / q };
        q = diag[i] - x - coupling;
        if q == T::zero() {
            q = -guard;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// Interval containing the whole spectrum.
pub fn gershgorin_bounds<T: Real>(diag: &[T], off: &[T]) -> (T, T) {
    let n = diag.len();
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { T::zero() };
        let right = if i + 1 < n { off[i].abs() } else { T::zero() };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    let pad = (hi - lo).abs().max(T::one()) * T::epsilon() * T::lit(4.0);
    (lo - pad, hi + pad)
}

const MAX_BISECTIONS: usize = 400;

/// The `index`-th smallest eigenvalue (0-based), bisected until the bracket
/// is no wider than `abs_tol` or cannot be split further.
pub fn kth_eigenvalue<T: Real>(diag: &[T], off: &[T], index: usize, abs_tol: T) -> Result<T> {
    let n = diag.len();
    if index >= n {
        return Err(Error::InvalidArgument(format!("eigenvalue {index} requested from a {n}x{n} operator")));
    }
    let (mut lo, mut hi) = gershgorin_bounds(diag, off);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::ConvergenceFailure("operator has non-finite entries".into()));
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if hi - lo <= abs_tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if sturm_count(diag, off, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "bracket [{lo}, {hi}] for eigenvalue {index} did not collapse in {MAX_BISECTIONS} steps"
    )))
}

/// The `count` smallest eigenvalues, ascending.
pub fn smallest_eigenvalues<T: Real>(diag: &[T], off: &[T], count: usize, abs_tol: T) -> Result<Vec<T>> {
    (0..count).map(|k| kth_eigenvalue(diag, off, k, abs_tol)).collect()
}

/// Solves (T − shift·I) x = rhs by Gaussian elimination with partial
/// pivoting; zero pivots are replaced by a tiny value, as inverse iteration
/// expects a nearly singular system.
fn shifted_solve<T: Real>(diag: &[T], off: &[T], shift: T, rhs: &mut [T]) {
    let n = diag.len();
    let tiny = T::epsilon() * diag.iter().fold(T::one(), |m, d| m.max(d.abs()));
    let mut d: Vec<T> = diag.iter().map(|&v| v - shift).collect();
    let mut du: Vec<T> = off.to_vec();
    let mut dl: Vec<T> = off.to_vec();
    let mut du2 = vec![T::zero(); n.saturating_sub(2)];
    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == T::zero() {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            d[i + 1] = d[i + 1] - fact * du[i];
            rhs[i + 1] = rhs[i + 1] - fact * rhs[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            let b = rhs[i];
            rhs[i] = rhs[i + 1];
            rhs[i + 1] = b - fact * rhs[i + 1];
        }
        dl[i] = T::zero();
    }
    if d[n - 1] == T::zero() {
        d[n - 1] = tiny;
    }
    rhs[n - 1] = rhs[n - 1] / d[n - 1];
    if n >= 2 {
        rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
    }
}

/// Unit eigenvector for an accurately known eigenvalue, by three steps of
/// inverse iteration. The sign is fixed so the first significant component
/// is positive.
pub fn inverse_iteration<T: Real>(diag: &[T], off: &[T], eigenvalue: T) -> Vec<T> {
    let n = diag.len();
    // Deterministic start vector with no special symmetry.
    let mut x: Vec<T> = (0..n).map(|i| T::one() + T::lit(0.5) * T::from_int((i % 7) as i64) / T::lit(7.0)).collect();
    for _ in 0..3 {
        shifted_solve(diag, off, eigenvalue, &mut x);
        let norm = x.iter().fold(T::zero(), |s, v| s + *v * *v).sqrt();
        for v in &mut x {
            *v = *v / norm;
        }
    }
    let peak = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if let Some(first) = x.iter().find(|v| v.abs() > peak * T::lit(1e-6)) {
        if *first < T::zero() {
            for v in &mut x {
                *v = -*v;
            }
        }
    }
    x
}

/// Sign changes among components above `rel_floor` of the peak magnitude.
pub fn count_nodes<T: Real>(vector: &[T], rel_floor: T) -> usize {
    let peak = vector.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let mut prev: Option<bool> = None;
    let mut changes = 0;
    for v in vector.iter().filter(|v| v.abs() > peak * rel_floor) {
        let pos = *v > T::zero();
        if prev.is_some_and(|p| p != pos) {
            changes += 1;
        }
        prev = Some(pos);
    }
    changes
}
