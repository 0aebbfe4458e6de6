//! Dense univariate polynomials with exact rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::RecurrenceScalar;

/// `coeffs[i]` multiplies `x^i`. No trailing zeros are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        Self::new(coeffs)
    }

    /// Remainder of Euclidean division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Self) -> Self {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > d_deg && !r.is_empty() {
            let shift = r.len() - 1 - d_deg;
            let factor = r.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Greatest common divisor, normalized to be monic.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lead) => Self::new(a.coeffs.into_iter().map(|c| c / &lead).collect()),
            None => a,
        }
    }

    /// Exact quotient by a divisor known to divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let Some(deg) = self.degree() else { return Self::zero() };
        if deg < d_deg {
            return Self::zero();
        }
        let mut q = vec![BigRational::zero(); deg - d_deg + 1];
        for shift in (0..=deg - d_deg).rev() {
            let factor = &r[shift + d_deg] / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            q[shift] = factor;
        }
        Self::new(q)
    }

    /// Coefficients scaled by a common positive factor to coprime integers
    /// with a positive leading coefficient.
    pub fn integer_scaled(&self) -> Vec<BigInt> {
        if self.coeffs.is_empty() {
            return Vec::new();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() {
            for c in &mut ints {
                *c = &*c / &g;
            }
        }
        if ints.last().unwrap().is_negative() {
            for c in &mut ints {
                *c = -&*c;
            }
        }
        ints
    }

    /// Substitutes x → s where only every `stride`-th power starting at
    /// `offset` is nonzero: returns q with p(x) = x^offset · q(x^stride).
    pub fn compress_powers(&self, offset: usize, stride: usize) -> Option<Self> {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let on_lattice = i >= offset && (i - offset) % stride == 0;
            if on_lattice {
                out.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Self::new(out))
    }
}

impl Zero for RationalPoly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for RationalPoly {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl Add for RationalPoly {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.into_iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.into_iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }
}

impl Neg for RationalPoly {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Sub for RationalPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RationalPoly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl RecurrenceScalar for RationalPoly {
    fn from_integer(v: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(v)))
    }
    fn div_integer(self, d: i64) -> Self {
        let d = BigRational::from_integer(BigInt::from(d));
        Self::new(self.coeffs.into_iter().map(|c| c / &d).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(c: &[i64]) -> RationalPoly {
        RationalPoly::new(c.iter().map(|&v| q(v, 1)).collect())
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let p = poly(&[-1, 0, 1]); // x² − 1
        let r = poly(&[1, 1]); // x + 1
        assert_eq!(p.clone().div_exact(&r), poly(&[-1, 1]));
        assert!(p.rem(&r).is_zero());
        assert_eq!(p.eval(&q(3, 1)), q(8, 1));
        assert_eq!((r.clone() * r.clone()).coeffs().len(), 3);
        assert_eq!(p.derivative(), poly(&[0, 2]));
        assert_eq!(p.gcd(&(r.clone() * poly(&[2, 1]))), r);
    }

    #[test]
    fn integer_scaling_clears_denominators() {
        let p = RationalPoly::new(vec![q(-1, 4), q(0, 1), q(1, 24)]);
        let ints = p.integer_scaled();
        assert_eq!(ints, vec![BigInt::from(-6), BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn compress_even_powers() {
        let p = poly(&[0, -28, 0, 1]); // x³ − 28x
        let c = p.compress_powers(1, 2).unwrap();
        assert_eq!(c, poly(&[-28, 1]));
        assert!(poly(&[1, 1]).compress_powers(0, 2).is_none());
    }
}
