//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Segment<T> {
    let half = (b - a) / T::lit(2.0);
    let centre = (a + b) / T::lit(2.0);
    let fc = f(centre);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = half * T::lit(XGK[i]);
        let pair = f(centre - dx) + f(centre + dx);
        kronrod = kronrod + pair * T::lit(WGK[i]);
        if i % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[i / 2]);
        }
    }
    Segment { a, b, value: kronrod * half, error: ((kronrod - gauss) * half).abs() }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error: T,
    pub segments: usize,
}

/// Integrates `f` over `[a, b]` until the summed error estimate is below
/// `max(abs_tol, rel_tol · |value|)`, bisecting the worst segment each step.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    rel_tol: T,
    abs_tol: T,
    max_segments: usize,
) -> Result<Integral<T>> {
    let initial = 8;
    let width = (b - a) / T::from_int(initial as i64);
    let mut segments: Vec<Segment<T>> = (0..initial)
        .map(|i| {
            let lo = a + width * T::from_int(i as i64);
            let hi = if i + 1 == initial { b } else { lo + width };
            gk15(&f, lo, hi)
        })
        .collect();
    loop {
        let value = segments.iter().fold(T::zero(), |s, g| s + g.value);
        let error = segments.iter().fold(T::zero(), |s, g| s + g.error);
        if !value.is_finite() {
            return Err(Error::QuadratureFailure("integrand is not finite".into()));
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Integral { value, error, segments: segments.len() });
        }
        if segments.len() >= max_segments {
            return Err(Error::QuadratureFailure(format!(
                "error estimate {error} above target after {} segments",
                segments.len()
            )));
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, s)| if s.error > be { (i, s.error) } else { (bi, be) });
        let s = segments.swap_remove(worst);
        let mid = (s.a + s.b) / T::lit(2.0);
        if !(mid > s.a && mid < s.b) {
            return Err(Error::QuadratureFailure("segment too narrow to bisect".into()));
        }
        segments.push(gk15(&f, s.a, mid));
        segments.push(gk15(&f, mid, s.b));
    }
}
