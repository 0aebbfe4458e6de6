//! Frobenius series of the biconfluent Heun equation
//!
//! ```text
//! H'' + (θ/ξ − 2ξ) H' + (g ± α/ξ) H = 0,     H(ξ) = Σ a_j ξ^j,  a_0 = 1.
//! ```
//!
//! Substituting the series gives the three-term recurrence
//!
//! ```text
//! a_1     = ∓α/θ
//! a_{j+2} = [∓α a_{j+1} − (g − 2j) a_j] / ((j + 2)(j + 1 + θ))
//! ```
//!
//! where the upper sign pairs with `+α/ξ` in the equation. Both sign choices
//! are exposed as [`SignConvention`]; they are related by α → −α, which maps
//! a_j → (−1)^j a_j exactly.

use crate::error::{Error, Result};
use crate::scalar::{Real, RecurrenceScalar};

/// Sign of the α term in the recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignConvention {
    /// a_1 = +α/θ. Frobenius series of the equation with a `−α/ξ` term.
    AlphaPlus,
    /// a_1 = −α/θ. Frobenius series of the equation with a `+α/ξ` term.
    AlphaMinus,
}

impl SignConvention {
    pub fn flipped(self) -> Self {
        match self {
            SignConvention::AlphaPlus => SignConvention::AlphaMinus,
            SignConvention::AlphaMinus => SignConvention::AlphaPlus,
        }
    }

    /// The ODE form whose Frobenius series this convention generates.
    pub fn solves(self) -> CoulombTerm {
        match self {
            SignConvention::AlphaPlus => CoulombTerm::Minus,
            SignConvention::AlphaMinus => CoulombTerm::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignConvention::AlphaPlus => "alpha_plus",
            SignConvention::AlphaMinus => "alpha_minus",
        }
    }
}

/// Sign of the `α/ξ` term in the differential equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoulombTerm {
    /// `(g + α/ξ) H`
    Plus,
    /// `(g − α/ξ) H`
    Minus,
}

impl CoulombTerm {
    pub fn as_str(self) -> &'static str {
        match self {
            CoulombTerm::Plus => "g + alpha/xi",
            CoulombTerm::Minus => "g - alpha/xi",
        }
    }
}

/// Coefficients `a_0 ..= a_count` of the recurrence, over any scalar that
/// supports ring operations and integer division (floats, exact rationals,
/// rational polynomials in α).
pub fn heun_recurrence<T: RecurrenceScalar>(
    theta: u32,
    g: &T,
    alpha: &T,
    count: usize,
    convention: SignConvention,
) -> Vec<T> {
    let alpha = match convention {
        SignConvention::AlphaPlus => alpha.clone(),
        SignConvention::AlphaMinus => -alpha.clone(),
    };
    let theta = theta as i64;
    let mut a = Vec::with_capacity(count + 1);
    a.push(T::one());
    if count == 0 {
        return a;
    }
    a.push(alpha.clone().div_integer(theta));
    for j in 0..count.saturating_sub(1) {
        let ji = j as i64;
        let denom = (ji + 2) * (ji + 1 + theta);
        let shift = g.clone() - T::from_integer(2 * ji);
        let next = (alpha.clone() * a[j + 1].clone() - shift * a[j].clone()).div_integer(denom);
        a.push(next);
    }
    a
}

const TRUNCATION_TOL: f64 = 1e-12;
const TAIL_TOL: f64 = 1e-16;

/// Numerical Frobenius coefficients with detected polynomial termination.
#[derive(Debug, Clone, PartialEq)]
pub struct HeunSeries<T> {
    pub theta: u32,
    pub g_param: T,
    pub alpha: T,
    pub sign_convention: SignConvention,
    pub coeffs: Vec<T>,
    /// `Some(n)` when `g = 2n` and `a_{n+1}` vanishes; the series is then the
    /// degree-n polynomial `a_0 … a_n`.
    pub truncation_degree: Option<usize>,
}

/// H, H′ and H″ at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunValue<T> {
    pub value: T,
    pub d1: T,
    pub d2: T,
}

pub fn heun_coefficients<T: Real + RecurrenceScalar>(
    theta: u32,
    g: T,
    alpha: T,
    count: usize,
    convention: SignConvention,
) -> Result<HeunSeries<T>> {
    if count < 2 {
        return Err(Error::InvalidArgument(format!("count = {count} must be >= 2")));
    }
    if theta % 2 == 0 {
        return Err(Error::InvalidArgument(format!("theta = {theta} must be a positive odd integer")));
    }
    let coeffs = heun_recurrence(theta, &g, &alpha, count, convention);
    let truncation_degree = detect_truncation(g, &coeffs);
    Ok(HeunSeries { theta, g_param: g, alpha, sign_convention: convention, coeffs, truncation_degree })
}

fn detect_truncation<T: Real>(g: T, coeffs: &[T]) -> Option<usize> {
    let half = g / T::lit(2.0);
    let n = half.round();
    if n < T::zero() || (half - n).abs() > T::tol(TRUNCATION_TOL) * T::one().max(half.abs()) {
        return None;
    }
    let n = n.to_usize()?;
    let next = *coeffs.get(n + 1)?;
    let scale = coeffs[..=n].iter().fold(T::zero(), |m, c| m.max(c.abs()));
    (next.abs() <= T::tol(TRUNCATION_TOL) * scale).then_some(n)
}

impl<T: Real> HeunSeries<T> {
    /// Coefficients that define the function: the polynomial part when
    /// terminated, otherwise everything stored.
    pub fn active_coeffs(&self) -> &[T] {
        match self.truncation_degree {
            Some(n) => &self.coeffs[..=n],
            None => &self.coeffs,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.truncation_degree.is_some()
    }

    /// H(ξ), H′(ξ), H″(ξ) by term-wise differentiation.
    pub fn eval(&self, xi: T) -> Result<HeunValue<T>> {
        if xi < T::zero() {
            return Err(Error::InvalidArgument(format!("xi = {xi} must be >= 0")));
        }
        let coeffs = self.active_coeffs();
        let (value, d1, d2) = horner2(coeffs, xi);
        if !self.is_polynomial() {
            let tail_ok = coeffs
                .iter()
                .enumerate()
                .rev()
                .take(3)
                .all(|(j, c)| (*c * xi.powi(j as i32)).abs() < T::lit(TAIL_TOL) * value.abs());
            if !tail_ok || !value.is_finite() {
                return Err(Error::NoConvergence { terms: coeffs.len() });
            }
        }
        Ok(HeunValue { value, d1, d2 })
    }
}

/// Value, first and second derivative of Σ c_j x^j.
pub(crate) fn horner2<T: Real>(coeffs: &[T], x: T) -> (T, T, T) {
    let mut p = T::zero();
    let mut d1 = T::zero();
    let mut d2 = T::zero();
    for c in coeffs.iter().rev() {
        d2 = d2 * x + d1;
        d1 = d1 * x + p;
        p = p * x + *c;
    }
    (p, d1, d2 * T::lit(2.0))
}

/// Max over samples of |ODE residual| / (1 + |H| + |H′| + |H″|) for the
/// equation with a `+α/ξ` term.
pub fn heun_residual<T: Real>(series: &HeunSeries<T>, xi_samples: &[T]) -> T {
    heun_residual_for(series, xi_samples, CoulombTerm::Plus)
}

/// [`heun_residual`] for an explicit sign of the `α/ξ` term.
pub fn heun_residual_for<T: Real>(series: &HeunSeries<T>, xi_samples: &[T], term: CoulombTerm) -> T {
    let theta = T::from_int(series.theta as i64);
    let two = T::lit(2.0);
    let alpha = match term {
        CoulombTerm::Plus => series.alpha,
        CoulombTerm::Minus => -series.alpha,
    };
    let coeffs = series.active_coeffs();
    xi_samples.iter().fold(T::zero(), |worst, &xi| {
        let (h, d1, d2) = horner2(coeffs, xi);
        let residual = d2 + (theta / xi - two * xi) * d1 + (series.g_param + alpha / xi) * h;
        let scale = T::one() + h.abs() + d1.abs() + d2.abs();
        worst.max(residual.abs() / scale)
    })
}

/// `count` evenly spaced samples on (0, xi_max].
pub fn residual_samples<T: Real>(xi_max: T, count: usize) -> Vec<T> {
    (1..=count).map(|i| xi_max * T::from_int(i as i64) / T::from_int(count as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn low_order_coefficients_match_closed_forms() {
        let a = heun_recurrence(3, &q(2, 1), &q(1, 1), 4, SignConvention::AlphaPlus);
        assert_eq!(a[0], q(1, 1));
        assert_eq!(a[1], q(1, 3));
        assert_eq!(a[2], q(1, 24) - q(1, 4));
        assert_eq!(a[2], q(-5, 24));
    }

    #[test]
    fn zero_alpha_collapses_both_conventions() {
        for conv in [SignConvention::AlphaPlus, SignConvention::AlphaMinus] {
            let s = heun_coefficients(3, 2.0, 0.0, 4, conv).unwrap();
            assert_eq!(s.coeffs[1], 0.0);
            assert_eq!(s.coeffs[2], -0.25);
        }
    }

    #[test]
    fn conventions_are_related_by_parity() {
        let p = heun_coefficients(5, 4.0, 2.0, 12, SignConvention::AlphaPlus).unwrap();
        let m = heun_coefficients(5, 4.0, 2.0, 12, SignConvention::AlphaMinus).unwrap();
        for (j, (a, b)) in p.coeffs.iter().zip(&m.coeffs).enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(*a, sign * *b, "j = {j}");
        }
    }

    #[test]
    fn count_below_two_is_rejected() {
        assert!(heun_coefficients(3, 2.0, 1.0, 1, SignConvention::AlphaPlus).is_err());
        assert!(heun_coefficients(4, 2.0, 1.0, 3, SignConvention::AlphaPlus).is_err());
    }

    #[test]
    fn degree_one_polynomial_at_the_quantized_alpha() {
        let alpha = 6.0f64.sqrt();
        let s = heun_coefficients(3, 2.0, alpha, 6, SignConvention::AlphaPlus).unwrap();
        assert_eq!(s.truncation_degree, Some(1));
        let at0 = s.eval(0.0).unwrap();
        assert_eq!(at0.value, 1.0);
        assert_eq!(at0.d1, s.coeffs[1]);
        let at1 = s.eval(1.0).unwrap();
        assert_relative_eq!(at1.value, 1.0 + s.coeffs[1], max_relative = 1e-15);
    }

    #[test]
    fn second_derivative_at_origin() {
        let s = heun_coefficients(3, 1.3, 0.7, 30, SignConvention::AlphaMinus).unwrap();
        assert!(s.truncation_degree.is_none());
        let v = s.eval(0.0).unwrap();
        assert_eq!(v.d2, 2.0 * s.coeffs[2]);
    }

    #[test]
    fn non_terminating_series_fails_far_out() {
        let s = heun_coefficients(3, 1.3, 0.7, 10, SignConvention::AlphaMinus).unwrap();
        assert!(matches!(s.eval(4.0), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn exactly_one_convention_solves_each_equation() {
        let alpha = 6.0f64.sqrt();
        let xs = residual_samples(5.0, 20);
        let minus = heun_coefficients(3, 2.0, alpha, 6, SignConvention::AlphaMinus).unwrap();
        let plus = heun_coefficients(3, 2.0, alpha, 6, SignConvention::AlphaPlus).unwrap();
        assert!(heun_residual(&minus, &xs) <= 1e-10);
        assert!(heun_residual(&plus, &xs) > 0.1);
        assert!(heun_residual_for(&plus, &xs, CoulombTerm::Minus) <= 1e-10);
        assert!(heun_residual_for(&minus, &xs, CoulombTerm::Minus) > 0.1);
    }

    #[test]
    fn pure_oscillator_case_has_tiny_residual() {
        // With α = 0 only even degrees terminate.
        for theta in [1u32, 3, 5, 7] {
            for n in [0usize, 2, 4] {
                let s = heun_coefficients(theta, 2.0 * n as f64, 0.0, 8, SignConvention::AlphaMinus).unwrap();
                assert_eq!(s.truncation_degree, Some(n));
                assert!(heun_residual(&s, &residual_samples(5.0, 20)) <= 1e-10);
            }
        }
        let s = heun_coefficients(3, 2.0, 0.0, 8, SignConvention::AlphaMinus).unwrap();
        assert_eq!(s.truncation_degree, None);
    }
}
