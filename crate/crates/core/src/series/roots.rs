//! Real-root isolation for exact rational polynomials: Sturm sequences to
//! count and separate roots, then sign bisection on exact dyadic midpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::RationalPoly;

fn sturm_sequence(p: &RationalPoly) -> Vec<RationalPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn sign_changes(seq: &[RationalPoly], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut prev: Option<bool> = None;
    for p in seq {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if prev.is_some_and(|s| s != pos) {
            changes += 1;
        }
        prev = Some(pos);
    }
    changes
}

/// Bound exceeding every root's magnitude (Cauchy).
fn root_bound(p: &RationalPoly) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p
        .coeffs()
        .iter()
        .take(p.coeffs().len() - 1)
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    max + BigRational::one()
}

/// Interior split point of (lo, hi) at which `p` does not vanish.
fn split_point(p: &RationalPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    for (num, den) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)] {
        let mid = lo + &width * BigRational::new(BigInt::from(num), BigInt::from(den));
        if !p.eval(&mid).is_zero() {
            return mid;
        }
    }
    unreachable!("a polynomial of finite degree cannot vanish at all trial points")
}

/// All distinct roots in the open interval `(0, ∞)`, ascending, refined to
/// relative width `rel_tol` and rounded to `f64`. Exact rational roots hit
/// during bisection are returned exactly.
pub fn positive_roots(p: &RationalPoly, rel_tol: f64) -> Vec<f64> {
    let Some(deg) = p.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let square_free = p.div_exact(&p.gcd(&p.derivative()));
    // Drop roots at zero.
    let first_nonzero = square_free.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let q = RationalPoly::new(square_free.coeffs()[first_nonzero..].to_vec());
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(&q);
    let count = |a: &BigRational, b: &BigRational| sign_changes(&seq, a) - sign_changes(&seq, b);

    let lo = BigRational::zero();
    let hi = root_bound(&q);
    let mut pending = vec![(lo, hi)];
    let mut isolated = Vec::new();
    while let Some((a, b)) = pending.pop() {
        match count(&a, &b) {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let m = split_point(&q, &a, &b);
                pending.push((a, m.clone()));
                pending.push((m, b));
            }
        }
    }

    let tol = BigRational::new(
        BigInt::from((rel_tol * 2f64.powi(60)).max(1.0) as i64),
        BigInt::one() << 60,
    );
    let mut roots: Vec<f64> = isolated.into_iter().map(|(a, b)| refine(&q, a, b, &tol)).collect();
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots
}

fn refine(q: &RationalPoly, mut a: BigRational, mut b: BigRational, rel_tol: &BigRational) -> f64 {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut fa_pos = q.eval(&a).is_positive();
    // The right end of an isolating interval may be the root itself.
    if q.eval(&b).is_zero() {
        return b.to_f64().unwrap();
    }
    while &b - &a > rel_tol * &b {
        let m = (&a + &b) / &two;
        let fm = q.eval(&m);
        if fm.is_zero() {
            return m.to_f64().unwrap();
        }
        if fm.is_positive() == fa_pos {
            a = m;
            fa_pos = q.eval(&a).is_positive();
        } else {
            b = m;
        }
    }
    ((a + b) / two).to_f64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> RationalPoly {
        RationalPoly::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    #[test]
    fn finds_rational_and_irrational_roots() {
        let p = poly(&[-6, 1]) * poly(&[-28, 1]) * poly(&[3, 1]);
        let r = positive_roots(&p, 1e-17);
        assert_eq!(r, vec![6.0, 28.0]);

        let p = poly(&[-2, 0, 1]);
        let r = positive_roots(&p, 1e-17);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2f64.sqrt()).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn handles_repeated_and_zero_roots() {
        let p = poly(&[0, 0, 1]) * poly(&[-5, 1]) * poly(&[-5, 1]);
        assert_eq!(positive_roots(&p, 1e-17), vec![5.0]);
        assert!(positive_roots(&poly(&[1, 0, 1]), 1e-17).is_empty());
        assert!(positive_roots(&poly(&[7]), 1e-17).is_empty());
    }

    #[test]
    fn separates_close_roots() {
        // roots 1/1000 and 2/1000
        let p = RationalPoly::new(vec![
            BigRational::new(2.into(), 1_000_000.into()),
            BigRational::new((-3).into(), 1000.into()),
            BigRational::one(),
        ]);
        let r = positive_roots(&p, 1e-17);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 1e-3).abs() < 1e-18);
        assert!((r[1] - 2e-3).abs() < 1e-18);
    }
}
