//! One-dimensional quadrature: adaptive Gauss–Kronrod (7/15) with interval
//! bisection, plus fixed Gauss–Legendre and Gauss–Hermite rules.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Values that can be integrated: real or complex.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn rel(rel: f64) -> Self {
        Tolerance {
            abs: 0.0,
            rel,
            max_intervals: 4000,
        }
    }

    pub fn with_abs(mut self, abs: f64) -> Self {
        self.abs = abs;
        self
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::rel(1e-10)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
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

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<T: QuadValue, F: Fn(f64) -> T + ?Sized>(f: &F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let k = kronrod * h;
    let g = gauss * h;
    let err = (k - g).magnitude();
    (k, err)
}

/// Adaptive integral of `f` over [a, b]. Infinite endpoints are mapped to a
/// finite interval with x = a + t/(1-t).
pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(f: F, a: f64, b: f64, tol: Tolerance) -> QuadResult<T> {
    integrate_dyn(&f, a, b, tol)
}

fn integrate_dyn<T: QuadValue>(f: &dyn Fn(f64) -> T, a: f64, b: f64, tol: Tolerance) -> QuadResult<T> {
    if a == b {
        return QuadResult {
            value: T::zero(),
            error: 0.0,
            intervals: 0,
        };
    }
    if a > b {
        let r = integrate_dyn(f, b, a, tol);
        return QuadResult {
            value: r.value * -1.0,
            ..r
        };
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adaptive(f, a, b, tol),
        (true, false) => adaptive(
            &|t: f64| {
                let u = 1.0 - t;
                if u <= 0.0 {
                    return T::zero();
                }
                let x = a + t / u;
                if x.is_finite() {
                    f(x) * (1.0 / (u * u))
                } else {
                    T::zero()
                }
            },
            0.0,
            1.0,
            tol,
        ),
        (false, true) => adaptive(
            &|t: f64| {
                let u = 1.0 - t;
                if u <= 0.0 {
                    return T::zero();
                }
                let x = b - t / u;
                if x.is_finite() {
                    f(x) * (1.0 / (u * u))
                } else {
                    T::zero()
                }
            },
            0.0,
            1.0,
            tol,
        ),
        (false, false) => {
            let left = integrate_dyn(f, f64::NEG_INFINITY, 0.0, tol);
            let right = integrate_dyn(f, 0.0, f64::INFINITY, tol);
            QuadResult {
                value: left.value + right.value,
                error: left.error + right.error,
                intervals: left.intervals + right.intervals,
            }
        }
    }
}

/// Integral over [points[0], points[last]] split at every listed point.
pub fn integrate_pieces<T: QuadValue, F: Fn(f64) -> T>(f: F, points: &[f64], tol: Tolerance) -> QuadResult<T> {
    let mut pts: Vec<f64> = points.to_vec();
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    let mut total = QuadResult {
        value: T::zero(),
        error: 0.0,
        intervals: 0,
    };
    for w in pts.windows(2) {
        let r = integrate_dyn(&f, w[0], w[1], tol);
        total.value = total.value + r.value;
        total.error += r.error;
        total.intervals += r.intervals;
    }
    total
}

struct Piece<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

fn adaptive<T: QuadValue, F: Fn(f64) -> T + ?Sized>(f: &F, a: f64, b: f64, tol: Tolerance) -> QuadResult<T> {
    let (v, e) = gk15(f, a, b);
    let mut pieces = vec![Piece { a, b, value: v, error: e }];
    let mut total = v;
    let mut total_err = e;
    loop {
        let target = tol.abs.max(tol.rel * total.magnitude());
        if total_err <= target || pieces.len() >= tol.max_intervals {
            break;
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap();
        let p = pieces.swap_remove(idx);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // interval cannot be split further in floating point
            pieces.push(Piece { error: 0.0, ..p });
            total_err -= p.error;
            continue;
        }
        let (v1, e1) = gk15(f, p.a, mid);
        let (v2, e2) = gk15(f, mid, p.b);
        total = total - p.value + v1 + v2;
        total_err += e1 + e2 - p.error;
        pieces.push(Piece { a: p.a, b: mid, value: v1, error: e1 });
        pieces.push(Piece { a: mid, b: p.b, value: v2, error: e2 });
    }
    // re-sum to shed the drift of the running updates
    let mut value = T::zero();
    let mut error = 0.0;
    for p in &pieces {
        value = value + p.value;
        error += p.error;
    }
    QuadResult {
        value,
        error,
        intervals: pieces.len(),
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        dp = if d != 0.0 { d } else { dp };
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (z * p1 - p0) / (z * z - 1.0))
}

/// Nodes and weights of the n-point Gauss–Hermite rule for the weight e^{-x²}.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let (p, d) = hermite_normalized(n, z);
            pp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = hermite_normalized(n, z);
        if d != 0.0 {
            pp = d;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    x.reverse();
    w.reverse();
    (x, w)
}

/// Orthonormal Hermite polynomial of degree n and its derivative.
fn hermite_normalized(n: usize, z: f64) -> (f64, f64) {
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut p1 = pim4;
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, (2.0 * n as f64).sqrt() * p2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_smooth_integrals() {
        let r = integrate(|x: f64| x * x, 0.0, 3.0, Tolerance::default());
        assert!((r.value - 9.0).abs() < 1e-13);
        let r = integrate(|x: f64| (-x).exp(), 0.0, f64::INFINITY, Tolerance::default());
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = integrate(|x: f64| (-x * x).exp(), f64::NEG_INFINITY, f64::INFINITY, Tolerance::default());
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        // endpoint singularity
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, Tolerance::rel(1e-12));
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn complex_integrand() {
        let r = integrate(|x: f64| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, Tolerance::default());
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn pieces_handle_kinks() {
        let r = integrate_pieces(|x: f64| x.abs(), &[-1.0, 0.0, 2.0], Tolerance::default());
        assert!((r.value - 2.5).abs() < 1e-14);
    }

    #[test]
    fn gauss_rules() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        let (x, w) = gauss_hermite(64);
        let s: f64 = w.iter().sum();
        assert!((s - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        assert!((s - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }
}
