//! Minimal double-double arithmetic.
//!
//! Only what the small-argument Hankel series needs: ring operations,
//! division, `exp` and `sin`/`cos` of an `f64`, and a complex logarithm
//! refined from its `f64` approximation.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub(crate) const EULER_GAMMA: Dd = Dd::new(0.5772156649015329, -4.942915152430645e-18);
pub(crate) const TWO_OVER_PI: Dd = Dd::new(0.6366197723675814, -3.935735335036497e-17);
const LN2: Dd = Dd::new(0.6931471805599453, 2.3190468138462996e-17);

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn ldexp(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd::new(self.hi * f, self.lo * f)
    }

    pub fn sqr(self) -> Dd {
        self * self
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        // long division, three correction steps
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

/// e^x with double-double accuracy.
pub(crate) fn exp(x: f64) -> Dd {
    if x == 0.0 {
        return Dd::ONE;
    }
    let k = (x / LN2.hi).round();
    let r = Dd::from_f64(x) - LN2 * Dd::from_f64(k);
    // r in [-ln2/2, ln2/2]; shrink by 2^10 and square back up
    let r = r.ldexp(-10);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for n in 1..=14 {
        term = term * r / Dd::from_f64(n as f64);
        sum = sum + term;
    }
    for _ in 0..10 {
        sum = sum.sqr();
    }
    sum.ldexp(k as i32)
}

/// (sin x, cos x) with double-double accuracy for |x| of order π.
pub(crate) fn sin_cos(x: f64) -> (Dd, Dd) {
    const HALVINGS: i32 = 8;
    let t = Dd::from_f64(x).ldexp(-HALVINGS);
    let t2 = t.sqr();
    let mut s = t;
    let mut c = Dd::ONE;
    let mut ts = t;
    let mut tc = Dd::ONE;
    for n in 1..=10 {
        let n = n as f64;
        ts = -(ts * t2) / Dd::from_f64((2.0 * n) * (2.0 * n + 1.0));
        tc = -(tc * t2) / Dd::from_f64((2.0 * n - 1.0) * (2.0 * n));
        s = s + ts;
        c = c + tc;
    }
    for _ in 0..HALVINGS {
        let s2 = (s * c).ldexp(1);
        let c2 = Dd::ONE - s.sqr().ldexp(1);
        s = s2;
        c = c2;
    }
    (s, c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };

    pub fn new(re: Dd, im: Dd) -> Self {
        Cdd { re, im }
    }

    pub fn from_c64(z: Complex64) -> Self {
        Cdd::new(Dd::from_f64(z.re), Dd::from_f64(z.im))
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, a: Dd) -> Cdd {
        Cdd::new(self.re * a, self.im * a)
    }

    /// Multiplication by i.
    pub fn mul_i(self) -> Cdd {
        Cdd::new(-self.im, self.re)
    }

    /// Principal logarithm of an `f64` complex number; `arg` must already be
    /// the argument in (-π, π] of `z`.
    pub fn ln_of(z: Complex64, arg: f64) -> Cdd {
        let l0 = Complex64::new(z.norm().ln(), arg);
        // u = z e^{-l0} ≈ 1; ln z = l0 + ln u
        let mag = exp(-l0.re);
        let (s, c) = sin_cos(l0.im);
        let e = Cdd::new(c * mag, -(s * mag));
        let u = Cdd::from_c64(z) * e;
        let d = u - Cdd::new(Dd::ONE, Dd::ZERO);
        let d2 = d * d;
        let d3 = d2 * d;
        let corr = d - d2.scale(Dd::from_f64(0.5)) + d3.scale(Dd::ONE / Dd::from_f64(3.0));
        Cdd::from_c64(l0) + corr
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, b: Cdd) -> Cdd {
        Cdd::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, b: Cdd) -> Cdd {
        Cdd::new(self.re - b.re, self.im - b.im)
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, b: Cdd) -> Cdd {
        Cdd::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}
