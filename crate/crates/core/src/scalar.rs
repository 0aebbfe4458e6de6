//! Scalar abstractions.
//!
//! Floating-point code is generic over [`Real`] (implemented for `f32` and
//! `f64`). The Frobenius recurrence is generic over the weaker
//! [`RecurrenceScalar`], which is also implemented for exact rationals and
//! for polynomials with rational coefficients, so the same recurrence can
//! produce numbers, exact fractions, or coefficient polynomials in α.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, ToPrimitive, Zero};

/// Floating-point scalar used by every numerical routine in the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable")
    }

    /// `requested` tolerance, floored at a small multiple of machine epsilon so
    /// that narrower types get an attainable target.
    fn tol(requested: f64) -> Self {
        Self::lit(requested).max(Self::epsilon() * Self::lit(16.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// The operations the three-term Frobenius recurrence needs: ring arithmetic
/// plus exact division by a nonzero integer.
pub trait RecurrenceScalar:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_integer(v: i64) -> Self;
    fn div_integer(self, d: i64) -> Self;
}

impl RecurrenceScalar for f64 {
    fn from_integer(v: i64) -> Self {
        v as f64
    }
    fn div_integer(self, d: i64) -> Self {
        self / d as f64
    }
}

impl RecurrenceScalar for f32 {
    fn from_integer(v: i64) -> Self {
        v as f32
    }
    fn div_integer(self, d: i64) -> Self {
        self / d as f32
    }
}

impl RecurrenceScalar for BigRational {
    fn from_integer(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn div_integer(self, d: i64) -> Self {
        self / BigRational::from_integer(BigInt::from(d))
    }
}
