//! Exact volumes of step regions intersected with balls, and the distance
//! profile A(r) = |Ω ∩ B(c, r)| used by the exponentially weighted integrals.

use std::f64::consts::PI;

use crate::quadrature::{integrate_pieces, Tolerance};

/// Support of a constant-height step potential.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    /// Axis-aligned box [lo, hi] in 1, 2 or 3 dimensions.
    Boxed { lo: Vec<f64>, hi: Vec<f64> },
    /// Three-dimensional ball of the given radius about the origin.
    Ball { radius: f64 },
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Boxed { lo, .. } => lo.len(),
            Region::Ball { .. } => 3,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Region::Boxed { lo, hi } => lo.iter().zip(hi).map(|(a, b)| (b - a).max(0.0)).product(),
            Region::Ball { radius } => 4.0 * PI / 3.0 * radius.powi(3),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Region::Boxed { lo, hi } => x.iter().zip(lo.iter().zip(hi)).all(|(x, (a, b))| *a <= *x && *x <= *b),
            Region::Ball { radius } => norm(x) <= *radius,
        }
    }

    /// Largest distance from `c` to a point of the region.
    pub fn farthest(&self, c: &[f64]) -> f64 {
        match self {
            Region::Boxed { lo, hi } => c
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(c, (a, b))| (c - a).abs().max((c - b).abs()).powi(2))
                .sum::<f64>()
                .sqrt(),
            Region::Ball { radius } => norm(c) + radius,
        }
    }

    /// Radii at which r ↦ |Ω ∩ B(c, r)| fails to be smooth.
    pub fn kinks(&self, c: &[f64]) -> Vec<f64> {
        match self {
            Region::Boxed { lo, hi } => {
                let d = lo.len();
                let mut out = Vec::new();
                // each axis contributes nothing, the lower face or the upper face
                let combos = 3usize.pow(d as u32);
                for code in 1..combos {
                    let mut m = code;
                    let mut r2 = 0.0;
                    for axis in 0..d {
                        match m % 3 {
                            1 => r2 += (c[axis] - lo[axis]).powi(2),
                            2 => r2 += (c[axis] - hi[axis]).powi(2),
                            _ => {}
                        }
                        m /= 3;
                    }
                    out.push(r2.sqrt());
                }
                out
            }
            Region::Ball { radius } => {
                let dist = norm(c);
                vec![(dist - radius).abs(), dist + radius]
            }
        }
    }

    /// |Ω ∩ B(c, r)|.
    pub fn overlap_with_ball(&self, c: &[f64], r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        match self {
            Region::Boxed { lo, hi } => {
                let rel_lo: Vec<f64> = lo.iter().zip(c).map(|(a, c)| a - c).collect();
                let rel_hi: Vec<f64> = hi.iter().zip(c).map(|(b, c)| b - c).collect();
                match lo.len() {
                    1 => (rel_hi[0].min(r) - rel_lo[0].max(-r)).max(0.0),
                    2 => rect_disk_area(rel_lo[0], rel_hi[0], rel_lo[1], rel_hi[1], r),
                    _ => box_ball_volume(&rel_lo, &rel_hi, r),
                }
            }
            Region::Ball { radius } => ball_ball_volume(*radius, norm(c), r),
        }
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// ∫₀^u √(r² - t²) dt extended oddly, clamped to |u| ≤ r.
fn chord_primitive(u: f64, r: f64) -> f64 {
    let u = u.clamp(-r, r);
    let s = (r * r - u * u).max(0.0).sqrt();
    0.5 * (u * s + r * r * (u / r).clamp(-1.0, 1.0).asin())
}

/// Area of the disk of radius r about the origin intersected with
/// the quadrant {u ≤ x, v ≤ y}.
fn quadrant_area(x: f64, y: f64, r: f64) -> f64 {
    let xc = x.clamp(-r, r);
    if xc <= -r || y <= -r {
        return 0.0;
    }
    // ∫ 2s du and ∫ (y + s) du on [a, b] ∩ [-r, xc]
    let full = |a: f64, b: f64| {
        let b = b.min(xc);
        if b <= a {
            0.0
        } else {
            2.0 * (chord_primitive(b, r) - chord_primitive(a, r))
        }
    };
    let partial = |a: f64, b: f64| {
        let b = b.min(xc);
        if b <= a {
            0.0
        } else {
            y * (b - a) + chord_primitive(b, r) - chord_primitive(a, r)
        }
    };
    if y >= r {
        return full(-r, r);
    }
    let uy = (r * r - y * y).max(0.0).sqrt();
    if y >= 0.0 {
        full(-r, -uy) + partial(-uy, uy) + full(uy, r)
    } else {
        partial(-uy, uy)
    }
}

/// Area of [x0, x1] × [y0, y1] intersected with the disk of radius r about
/// the origin.
pub fn rect_disk_area(x0: f64, x1: f64, y0: f64, y1: f64, r: f64) -> f64 {
    if x1 <= x0 || y1 <= y0 || r <= 0.0 {
        return 0.0;
    }
    let a = quadrant_area(x1, y1, r) - quadrant_area(x0, y1, r) - quadrant_area(x1, y0, r) + quadrant_area(x0, y0, r);
    a.max(0.0)
}

/// Volume of a box (coordinates relative to the ball centre) intersected
/// with the ball of radius r, by slicing along the first axis.
fn box_ball_volume(lo: &[f64], hi: &[f64], r: f64) -> f64 {
    let a = lo[0].max(-r);
    let b = hi[0].min(r);
    if b <= a {
        return 0.0;
    }
    let mut points = vec![a, b];
    // slices change character when the disk radius crosses an edge or corner distance
    let edges = [lo[1], hi[1], lo[2], hi[2]];
    let mut radii: Vec<f64> = edges.iter().map(|e| e.abs()).collect();
    for &u in &[lo[1], hi[1]] {
        for &v in &[lo[2], hi[2]] {
            radii.push((u * u + v * v).sqrt());
        }
    }
    for rho in radii {
        if rho < r {
            let t = (r * r - rho * rho).sqrt();
            for x in [-t, t] {
                if x > a && x < b {
                    points.push(x);
                }
            }
        }
    }
    if a < 0.0 && b > 0.0 {
        points.push(0.0);
    }
    integrate_pieces(
        |x: f64| {
            let rho = (r * r - x * x).max(0.0).sqrt();
            rect_disk_area(lo[1], hi[1], lo[2], hi[2], rho)
        },
        &points,
        Tolerance::rel(1e-13).with_abs(1e-300),
    )
    .value
}

/// Volume of B(0, big) ∩ B(c, small) with |c| = dist.
pub fn ball_ball_volume(big: f64, dist: f64, small: f64) -> f64 {
    if dist >= big + small {
        return 0.0;
    }
    if dist <= (big - small).abs() {
        return 4.0 * PI / 3.0 * big.min(small).powi(3);
    }
    let (r1, r2, d) = (big, small, dist);
    PI * (r1 + r2 - d).powi(2) * (d * d + 2.0 * d * r2 - 3.0 * r2 * r2 + 2.0 * d * r1 + 6.0 * r2 * r1 - 3.0 * r1 * r1)
        / (12.0 * d)
}
