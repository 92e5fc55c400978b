//! Square-root branch, the order-zero Hankel function and closed-form kernels
//! of the free resolvent (-Δ - E)^{-1} in one, two and three dimensions.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::{self, Cdd, Dd};
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Radius at which `hankel0_h1` switches from the power series to the
/// large-argument representation.
pub const HANKEL_CROSSOVER: f64 = 10.0;

/// Square root with Im κ ≥ 0, cut along [0, ∞).
///
/// On [0, ∞) itself the nonnegative real root is returned.
pub fn sqrt_upper(e: Complex64) -> Complex64 {
    let s = normalize_zero(e).sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// Maps a negative zero imaginary part to +0 so that the principal branch
/// is taken from above on the negative real axis.
fn normalize_zero(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

fn check_dim(d: usize) -> Result<()> {
    if (1..=3).contains(&d) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("dimension {d}, only 1, 2, 3")))
    }
}

/// A spectral parameter together with its upper-half-plane square root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub e: Complex64,
    pub kappa: Complex64,
    pub d: usize,
}

impl SpectralPoint {
    pub fn new(e: Complex64, d: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(SpectralPoint {
            e,
            kappa: sqrt_upper(e),
            d,
        })
    }

    /// Builds a point from an explicitly chosen root without re-deriving it.
    pub fn from_parts(e: Complex64, kappa: Complex64, d: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(SpectralPoint { e, kappa, d })
    }

    /// The point with E replaced by κ² for a given κ.
    pub fn from_kappa(kappa: Complex64, d: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(SpectralPoint {
            e: kappa * kappa,
            kappa,
            d,
        })
    }

    pub fn on_positive_axis(&self) -> bool {
        self.e.im == 0.0 && self.e.re >= 0.0
    }

    /// Im √E, the exponential decay rate of the kernel.
    pub fn decay_rate(&self) -> f64 {
        self.kappa.im
    }

    fn check_resolvent_set(&self) -> Result<()> {
        if self.on_positive_axis() {
            return Err(Error::Domain(format!(
                "E = {} lies on the spectrum [0, inf)",
                self.e
            )));
        }
        if self.kappa.im <= 0.0 {
            return Err(Error::Branch(format!(
                "Im kappa = {} must be positive off [0, inf)",
                self.kappa.im
            )));
        }
        Ok(())
    }
}

/// H₀⁽¹⁾(w) on the principal branch, arg w ∈ (-π, π].
pub fn hankel0_h1(w: Complex64) -> Result<Complex64> {
    if w.norm() <= HANKEL_CROSSOVER {
        hankel0_h1_series(w)
    } else {
        hankel0_h1_asymptotic(w)
    }
}

/// Ascending series J₀ + iY₀, summed in double-double arithmetic.
///
/// The series terms grow like I₀(|w|) while H₀⁽¹⁾ decays like K₀(|w|) in the
/// upper half-plane, so the extra precision is what keeps the result accurate
/// up to |w| ≈ 12.
pub fn hankel0_h1_series(w: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("H0(1) has a logarithmic singularity at w = 0".into()));
    }
    let w = normalize_zero(w);
    let arg = w.im.atan2(w.re);
    let wd = Cdd::from_c64(w);
    let q = (wd * wd).scale(Dd::from_f64(-0.25));

    let mut term = Cdd::new(Dd::ONE, Dd::ZERO);
    let mut j0 = term;
    let mut harmonic_sum = Cdd::ZERO;
    let mut harmonic = Dd::ZERO;
    let mut largest = 1.0f64;
    for k in 1..400 {
        let kk = Dd::from_f64((k * k) as f64);
        term = (term * q).scale(kk.recip());
        harmonic = harmonic + Dd::from_f64(k as f64).recip();
        j0 = j0 + term;
        harmonic_sum = harmonic_sum + term.scale(harmonic);
        let size = term.re.hi.abs() + term.im.hi.abs();
        largest = largest.max(size);
        if size * (1.0 + harmonic.hi) < 1e-34 * largest {
            break;
        }
    }
    let log_half = Cdd::ln_of(w, arg) - Cdd::new(Dd::new(LN2_HI, LN2_LO), Dd::ZERO);
    let shifted = log_half + Cdd::new(dd::EULER_GAMMA, Dd::ZERO);
    let y0 = (shifted * j0 - harmonic_sum).scale(dd::TWO_OVER_PI);
    Ok((j0 + y0.mul_i()).to_c64())
}

const LN2_HI: f64 = 0.6931471805599453;
const LN2_LO: f64 = 2.3190468138462996e-17;

#[derive(Clone, Copy)]
enum HankelKind {
    First,
    Second,
}

/// Laplace-integral form of the large-argument expansion,
/// H₀⁽¹⁾(w) = √(2/(πw)) e^{i(w-π/4)} π^{-1/2} ∫₀^∞ e^{-u} u^{-1/2} (1 + iu/(2w))^{-1/2} du,
/// with the u-ray rotated away from the branch point u = 2iw and summed by
/// the trapezoid rule in s, u = e^{iθ}s².
fn hankel_laplace(w: Complex64, kind: HankelKind) -> Complex64 {
    const STEP: f64 = 0.1;
    const HALF_NODES: i32 = 120;
    const MAX_TILT: f64 = 3.0 * PI / 8.0;
    let sign = match kind {
        HankelKind::First => 1.0,
        HankelKind::Second => -1.0,
    };
    let arg = w.im.atan2(w.re);
    // direction of the branch point
    let sigma = sign * FRAC_PI_2 + arg;
    let theta = if sign * sigma >= 0.0 {
        (sigma - sign * PI).clamp(-MAX_TILT, MAX_TILT)
    } else {
        0.5 * (sigma - sign * FRAC_PI_2)
    };
    let rot = Complex64::from_polar(1.0, theta);
    let c = Complex64::new(0.0, sign) / (2.0 * w) * rot;
    let mut total = Complex64::new(0.0, 0.0);
    for j in -HALF_NODES..=HALF_NODES {
        let s = j as f64 * STEP;
        let s2 = s * s;
        total += (-rot * s2).exp() * (Complex64::new(1.0, 0.0) + c * s2).powf(-0.5);
    }
    total *= STEP * Complex64::from_polar(1.0, 0.5 * theta);
    let inv_sqrt_w = Complex64::from_polar(w.norm().powf(-0.5), -0.5 * arg);
    let phase = (Complex64::new(0.0, sign) * (w - FRAC_PI_4)).exp();
    (2.0 / PI).sqrt() * inv_sqrt_w * phase * total / PI.sqrt()
}

/// Large-argument branch of `hankel0_h1`, accurate for |w| ≥ 8.
pub fn hankel0_h1_asymptotic(w: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("H0(1) has a logarithmic singularity at w = 0".into()));
    }
    let w = normalize_zero(w);
    let arg = w.im.atan2(w.re);
    if arg >= -3.0 * FRAC_PI_4 {
        Ok(hankel_laplace(w, HankelKind::First))
    } else {
        // H₀⁽¹⁾(ζe^{-iπ}) = 2H₀⁽¹⁾(ζ) + H₀⁽²⁾(ζ) with ζ = -w in the first quadrant
        let zeta = -w;
        Ok(2.0 * hankel_laplace(zeta, HankelKind::First) + hankel_laplace(zeta, HankelKind::Second))
    }
}

/// Kernel of (-Δ - E)^{-1} at distance r.
pub fn free_resolvent_kernel(sp: &SpectralPoint, r: f64) -> Result<Complex64> {
    sp.check_resolvent_set()?;
    let kappa = sp.kappa;
    match sp.d {
        1 => {
            if r < 0.0 {
                return Err(Error::Domain(format!("negative distance {r}")));
            }
            Ok(I * (I * kappa * r).exp() / (2.0 * kappa))
        }
        2 => {
            if r <= 0.0 {
                return Err(Error::Domain("d = 2 kernel is singular at r = 0".into()));
            }
            Ok(0.25 * I * hankel0_h1(kappa * r)?)
        }
        3 => {
            if r <= 0.0 {
                return Err(Error::Domain("d = 3 kernel is singular at r = 0".into()));
            }
            Ok((I * kappa * r).exp() / (4.0 * PI * r))
        }
        d => Err(Error::Unsupported(format!("dimension {d}"))),
    }
}

/// Kernel of (-Δ - E)^{-ζ} in three dimensions for ζ ∈ {1, 3/2, 2}.
pub fn fractional_kernel_d3(sp: &SpectralPoint, zeta: f64, r: f64) -> Result<Complex64> {
    if sp.d != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: sp.d,
        });
    }
    sp.check_resolvent_set()?;
    if r <= 0.0 {
        return Err(Error::Domain("fractional kernel needs r > 0".into()));
    }
    let kappa = sp.kappa;
    if zeta == 1.0 {
        free_resolvent_kernel(sp, r)
    } else if zeta == 2.0 {
        Ok(I * (I * kappa * r).exp() / (8.0 * PI * kappa))
    } else if zeta == 1.5 {
        // (2π²)^{-1} K₀(-iκr) written through H₀⁽¹⁾
        Ok(I * hankel0_h1(kappa * r)? / (4.0 * PI))
    } else {
        Err(Error::Unsupported(format!(
            "resolvent power {zeta}; supported: 1, 3/2, 2"
        )))
    }
}

/// Right-hand side C e^{-Im κ r} r^{ζ-(d+1)/2} of the pointwise kernel bound
/// on the unit circle |E| = 1.
pub fn pointwise_bound_rhs(sp: &SpectralPoint, zeta: f64, r: f64, c: f64) -> Result<f64> {
    if (sp.e.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("|E| = {} but the bound needs |E| = 1", sp.e.norm())));
    }
    let d = sp.d as f64;
    // ζ = 1 in d = 3 is the plain resolvent and is admitted below d/2
    if zeta <= 0.0 || zeta > (d + 1.0) / 2.0 {
        return Err(Error::Range(format!(
            "zeta = {zeta} outside (0, {}]",
            (d + 1.0) / 2.0
        )));
    }
    if r <= 0.0 {
        return Err(Error::Domain("bound needs r > 0".into()));
    }
    Ok(c * (-sp.kappa.im * r).exp() * r.powf(zeta - (d + 1.0) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sqrt_upper_examples() {
        assert_eq!(sqrt_upper(c(-1.0, 0.0)), c(0.0, 1.0));
        assert_eq!(sqrt_upper(c(-1.0, -0.0)), c(0.0, 1.0));
        let k = sqrt_upper(c(0.0, 2.0));
        assert_relative_eq!(k.re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(k.im, 1.0, epsilon = 1e-15);
        let k = sqrt_upper(c(0.99, 0.2));
        assert!((k - c(1.0, 0.1)).norm() < 1e-15);
        // just below the cut the root flips to the left half-plane
        let k = sqrt_upper(c(4.0, -1e-12));
        assert!(k.re < 0.0 && k.im > 0.0);
        assert_eq!(sqrt_upper(c(4.0, 0.0)), c(2.0, 0.0));
    }

    #[test]
    fn hankel_reference_values() {
        // mpmath.hankel1(0, w) at 40 digits
        let cases = [
            (c(1.0, 0.0), c(0.7651976865579666, 0.08825696421567696)),
            (c(0.0, 2.0), c(0.0, -0.07250709134387025)),
            (c(3.0, -2.0), c(-2.48067648891085, 1.948786988612625)),
            (c(10.0, 0.0), c(-0.24593576445134834, 0.05567116728359939)),
            (c(-10.0, 0.1), c(0.22224504608865333, 0.05147476334243250)),
        ];
        for (w, expect) in cases {
            let h = hankel0_h1(w).unwrap();
            assert!((h - expect).norm() / expect.norm() < 1e-10, "w = {w}: {h} vs {expect}");
        }
        assert!(matches!(hankel0_h1(c(0.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn branches_agree_at_crossover() {
        let w = c(10.0, 0.0);
        let a = hankel0_h1_series(w).unwrap();
        let b = hankel0_h1_asymptotic(w).unwrap();
        assert!((a - b).norm() / a.norm() < 1e-10);
    }

    #[test]
    fn kernel_closed_forms() {
        let sp3 = SpectralPoint::new(c(-1.0, 0.0), 3).unwrap();
        let k = free_resolvent_kernel(&sp3, 1.0).unwrap();
        assert_relative_eq!(k.re, (-1f64).exp() / (4.0 * PI), epsilon = 1e-16);
        assert_relative_eq!(k.re, 0.0292749, epsilon = 1e-6);
        let sp1 = SpectralPoint::new(c(-1.0, 0.0), 1).unwrap();
        let k = free_resolvent_kernel(&sp1, 0.0).unwrap();
        assert!((k - c(0.5, 0.0)).norm() < 1e-16);
        assert!(matches!(free_resolvent_kernel(&sp3, 0.0), Err(Error::Domain(_))));
        let on_axis = SpectralPoint::new(c(2.0, 0.0), 3).unwrap();
        assert!(matches!(free_resolvent_kernel(&on_axis, 1.0), Err(Error::Domain(_))));
        let wrong = SpectralPoint::from_parts(c(-1.0, 0.0), c(0.0, -1.0), 3).unwrap();
        assert!(matches!(free_resolvent_kernel(&wrong, 1.0), Err(Error::Branch(_))));
    }

    #[test]
    fn fractional_kernel_cases() {
        let sp = SpectralPoint::new(c(-1.0, 0.0), 3).unwrap();
        let k = fractional_kernel_d3(&sp, 1.0, 2.0).unwrap();
        assert_relative_eq!(k.re, (-2f64).exp() / (8.0 * PI), epsilon = 1e-16);
        let k2 = fractional_kernel_d3(&sp, 2.0, 0.7).unwrap();
        assert_relative_eq!(k2.re, (-0.7f64).exp() / (8.0 * PI), epsilon = 1e-16);
        assert!(matches!(
            fractional_kernel_d3(&sp, 1.25, 1.0),
            Err(Error::Unsupported(_))
        ));
        let sp2 = SpectralPoint::new(c(-1.0, 0.0), 2).unwrap();
        assert!(fractional_kernel_d3(&sp2, 1.0, 1.0).is_err());
    }

    #[test]
    fn pointwise_bound_examples() {
        let sp = SpectralPoint::new(c(-1.0, 0.0), 3).unwrap();
        let v = pointwise_bound_rhs(&sp, 2.0, 5.0, 1.0).unwrap();
        assert_relative_eq!(v, (-5f64).exp(), epsilon = 1e-17);
        let off = SpectralPoint::new(c(-2.0, 0.0), 3).unwrap();
        assert!(matches!(pointwise_bound_rhs(&off, 2.0, 1.0, 1.0), Err(Error::Domain(_))));
    }
}
