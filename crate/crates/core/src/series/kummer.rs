//! Kummer's confluent hypergeometric function ₁F₁(a; b; r) by direct
//! summation of its power series.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hard cap on the number of summed terms.
pub const MAX_TERMS: usize = 10_000;
const STOP_RATIO: f64 = 1e-16;
const INTEGER_SNAP: f64 = 1e-12;

/// Explicit coefficients `c_j` of `r^j` in ₁F₁(a; b; r).
#[derive(Debug, Clone, PartialEq)]
pub struct KummerSeries<T> {
    pub a: T,
    pub b: T,
    pub coeffs: Vec<T>,
    pub terminated: bool,
    pub degree: Option<u32>,
}

/// Returns `n` when `a` is within the snapping tolerance of `−n`.
fn nonpositive_integer<T: Real>(a: T) -> Option<u32> {
    let r = a.round();
    if r <= T::zero() && (a - r).abs() <= T::lit(INTEGER_SNAP) {
        (-r).to_u32()
    } else {
        None
    }
}

fn check_b<T: Real>(b: T) -> Result<()> {
    if b <= T::zero() && b == b.round() {
        return Err(Error::InvalidArgument(format!("b = {b} is a nonpositive integer")));
    }
    Ok(())
}

impl<T: Real> KummerSeries<T> {
    /// Builds `count + 1` coefficients via the ratio
    /// c_{j+1}/c_j = (a + j)/((b + j)(j + 1)). When `a` is a nonpositive
    /// integer it is snapped to that integer, so coefficients past the degree
    /// are exactly zero.
    pub fn new(a: T, b: T, count: usize) -> Result<Self> {
        check_b(b)?;
        let degree = nonpositive_integer(a);
        let a = match degree {
            Some(n) => -T::from_int(n as i64),
            None => a,
        };
        let mut coeffs = Vec::with_capacity(count + 1);
        let mut c = T::one();
        coeffs.push(c);
        for j in 0..count {
            let jt = T::from_int(j as i64);
            c = c * (a + jt) / ((b + jt) * (jt + T::one()));
            coeffs.push(c);
        }
        Ok(Self { a, b, coeffs, terminated: degree.is_some(), degree })
    }

    /// The terminating polynomial ₁F₁(−n; b; r), coefficients c_0..=c_{n+1}
    /// (the last one is the exact zero that ends the series).
    pub fn polynomial(n: u32, b: T) -> Result<Self> {
        Self::new(-T::from_int(n as i64), b, n as usize + 1)
    }

    /// Evaluates the stored coefficients as a polynomial, with first
    /// derivative.
    pub fn eval_poly(&self, r: T) -> (T, T) {
        let mut value = T::zero();
        let mut deriv = T::zero();
        for c in self.coeffs.iter().rev() {
            deriv = deriv * r + value;
            value = value * r + *c;
        }
        (value, deriv)
    }
}

/// ₁F₁(a; b; r) for `r ≥ 0`, by direct summation. Exact finite sum when `a`
/// is a nonpositive integer; otherwise stops once three consecutive terms
/// fall below 1e-16 of the partial sum.
pub fn kummer_eval<T: Real>(a: T, b: T, r: T) -> Result<T> {
    kummer_eval_with_derivative(a, b, r).map(|(v, _)| v)
}

/// ₁F₁ and its r-derivative, both by term-wise summation.
pub fn kummer_eval_with_derivative<T: Real>(a: T, b: T, r: T) -> Result<(T, T)> {
    check_b(b)?;
    if r < T::zero() {
        return Err(Error::InvalidArgument(format!("r = {r} must be >= 0")));
    }
    if let Some(n) = nonpositive_integer(a) {
        let series = KummerSeries::polynomial(n, b)?;
        return Ok(series.eval_poly(r));
    }
    let stop = T::lit(STOP_RATIO);
    let mut term = T::one();
    let mut sum = T::one();
    // derivative terms: j c_j r^{j-1}
    let mut dsum = T::zero();
    let mut small_run = 0;
    for j in 0..MAX_TERMS {
        let jt = T::from_int(j as i64);
        let ratio = (a + jt) / ((b + jt) * (jt + T::one()));
        // d/dr of c_{j+1} r^{j+1} = (j+1) c_{j+1} r^j = (j+1) ratio c_j r^j
        dsum = dsum + (jt + T::one()) * ratio * term;
        term = term * ratio * r;
        sum = sum + term;
        if !sum.is_finite() {
            return Err(Error::NoConvergence { terms: j + 1 });
        }
        if term.abs() < stop * sum.abs() || term == T::zero() {
            small_run += 1;
            if small_run >= 3 {
                return Ok((sum, dsum));
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence { terms: MAX_TERMS })
}
