//! Polar forms about the center of the leading circle.

use std::f64::consts::PI;

use super::{classify, LeashParams, TractrixClass};
use crate::error::{Error, Result};
use crate::geometry::Point2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub p: f64,
    pub phi: f64,
    pub pole: Point2,
    /// Direction of the polar axis: 0, or pi for the internal tractrix, which
    /// is turned half a revolution so that phi(0) = 0.
    pub axis: f64,
}

impl PolarPoint {
    pub fn to_cartesian(&self) -> Point2 {
        self.pole + Point2::polar(self.axis + self.phi) * self.p
    }
}

/// (1 - t^2)/(1 + t^2), finite for t = infinity.
fn cos_from_t(t: f64) -> f64 {
    if t > 1.0 {
        let u = 1.0 / t;
        (u * u - 1.0) / (u * u + 1.0)
    } else {
        let t2 = t * t;
        (1.0 - t2) / (1.0 + t2)
    }
}

fn polar_angle(w: f64, t: f64) -> f64 {
    if w == 1.0 {
        return t - t.atan();
    }
    if w > 1.0 {
        let r = (w * w - 1.0).sqrt();
        let q2 = (w - 1.0) / (w + 1.0);
        2.0 * w / r * (q2.sqrt() * t).atan() - (q2 * t).atan() - t.atan()
    } else {
        let r = (1.0 - w * w).sqrt();
        let q2 = (1.0 - w) / (1.0 + w);
        2.0 * w / r * (q2.sqrt() * t).atanh() + (q2 * t).atan() - t.atan()
    }
}

/// Polar samples for parameters t = tan(xi/2). Defined for T1, T2, T3 and T5.
pub fn trace_polar(params: &LeashParams, t_grid: &[f64]) -> Result<Vec<PolarPoint>> {
    let w = params.w;
    match classify(w, params.leash)? {
        TractrixClass::T1 | TractrixClass::T2 | TractrixClass::T3 | TractrixClass::T5 => {}
        class => {
            return Err(Error::Invalid(format!(
                "no polar form about a finite pole for class {class}"
            )))
        }
    }
    let r = params.radius();
    let t_max = if w < 1.0 {
        ((1.0 + w) / (1.0 - w)).sqrt()
    } else {
        f64::INFINITY
    };
    let flip = params.sign_branch == super::Branch::Minus;
    let pole = Point2::new(-params.leash / w, 0.0);
    let axis = if w < 0.0 { PI } else { 0.0 };
    t_grid
        .iter()
        .map(|&t| {
            let ok = if w < 1.0 {
                t >= 0.0 && t < t_max
            } else {
                t >= 0.0
            };
            if !ok {
                return Err(Error::OutOfRange {
                    what: "t",
                    value: t,
                });
            }
            if w == 1.0 && t.is_infinite() {
                return Err(Error::OutOfRange {
                    what: "t",
                    value: t,
                });
            }
            let c = cos_from_t(t);
            let p = r * (1.0 + 2.0 * w * c + w * w).max(0.0).sqrt();
            let phi = polar_angle(w, t);
            let pt = PolarPoint { p, phi, pole, axis };
            Ok(if flip {
                PolarPoint {
                    phi: -phi,
                    axis: -axis,
                    ..pt
                }
            } else {
                pt
            })
        })
        .collect()
}

/// Long-leash polar form with w = cosh(omega), q = tanh(omega/2).
/// Returns (p, phi).
pub fn polar_hyperbolic(w: f64, radius: f64, t: f64) -> Result<(f64, f64)> {
    if !(w > 1.0) {
        return Err(Error::OutOfRange {
            what: "w",
            value: w,
        });
    }
    let q = (0.5 * w.acosh()).tanh();
    let q2 = q * q;
    let p = 2.0 * radius / (1.0 - q2) * ((1.0 + q2 * q2 * t * t) / (1.0 + t * t)).sqrt();
    let phi = (q + 1.0 / q) * (q * t).atan() - (q2 * t).atan() - t.atan();
    Ok((p, phi))
}

/// Short-leash polar form with w = cos(omega), q = tan(omega/2).
/// Returns (p, phi). The leading coefficient is 1/q - q = 2w/sqrt(1 - w^2).
pub fn polar_trigonometric(w: f64, radius: f64, t: f64) -> Result<(f64, f64)> {
    if !(w.abs() < 1.0) || w == 0.0 {
        return Err(Error::OutOfRange {
            what: "w",
            value: w,
        });
    }
    let q = (0.5 * w.acos()).tan();
    let q2 = q * q;
    if !(t >= 0.0 && q * t < 1.0) {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
        });
    }
    let p = 2.0 * radius / (1.0 + q2) * ((1.0 + q2 * q2 * t * t) / (1.0 + t * t)).sqrt();
    let phi = (1.0 / q - q) * (q * t).atanh() + (q2 * t).atan() - t.atan();
    Ok((p, phi))
}

/// Explicit polar equation phi(p) of the spiral tractrix (w = 1), 0 < p <= 2T.
pub fn spiral_polar_explicit(p: f64, leash: f64) -> Result<f64> {
    if !(leash > 0.0) {
        return Err(Error::OutOfRange {
            what: "leash length",
            value: leash,
        });
    }
    if !(p > 0.0 && p <= 2.0 * leash) {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
        });
    }
    let c = (p / (2.0 * leash)).min(1.0);
    Ok(-c.acos() + (4.0 * leash * leash - p * p).max(0.0).sqrt() / p)
}

/// Polar width of the sector holding a long-leash tractrix.
pub fn sector_width(w: f64) -> Result<f64> {
    if !(w > 1.0) || w.is_infinite() {
        return Err(Error::OutOfRange {
            what: "w",
            value: w,
        });
    }
    Ok(PI * (w / (w * w - 1.0).sqrt() - 1.0))
}

/// w > 1 whose sector width is 2*pi*num/den.
pub fn star_shape_parameter(num: u32, den: u32) -> Result<f64> {
    if num == 0 || den == 0 {
        return Err(Error::OutOfRange {
            what: "star ratio",
            value: if den == 0 { f64::NAN } else { 0.0 },
        });
    }
    let m = 2.0 * num as f64 / den as f64 + 1.0;
    Ok(m / (m * m - 1.0).sqrt())
}

/// Branches of the periodically continued long-leash tractrix with sector
/// width 2*pi*num/den, in Cartesian coordinates of the canonical placement.
/// Every other branch is the mirror image (the reverse tractrix) of its
/// predecessor about the ray through their common end point; the list closes
/// after `den` branches when `den` is even and after `2 den` otherwise.
pub fn star_branches(
    num: u32,
    den: u32,
    leash: f64,
    per_branch: usize,
) -> Result<Vec<Vec<Point2>>> {
    let w = star_shape_parameter(num, den)?;
    let params = LeashParams::new(w, leash)?;
    let width = sector_width(w)?;
    let n = per_branch.max(2);
    // uniform in xi over [0, pi]
    let t_grid: Vec<f64> = (0..n)
        .map(|i| {
            if i + 1 == n {
                f64::INFINITY
            } else {
                (0.5 * PI * i as f64 / (n - 1) as f64).tan()
            }
        })
        .collect();
    let base = trace_polar(&params, &t_grid)?;
    let count = if den.is_multiple_of(2) { den } else { 2 * den } as usize;
    let branches = (0..count)
        .map(|j| {
            let pts = base.iter().map(|pp| {
                let phi = if j % 2 == 0 {
                    j as f64 * width + pp.phi
                } else {
                    (j + 1) as f64 * width - pp.phi
                };
                PolarPoint { phi, ..*pp }.to_cartesian()
            });
            if j % 2 == 0 {
                pts.collect()
            } else {
                let mut v: Vec<Point2> = pts.collect();
                v.reverse();
                v
            }
        })
        .collect();
    Ok(branches)
}

/// Distance between the end of the last branch and the start of the first,
/// plus the largest join gap between consecutive branches.
pub fn star_closure_gap(branches: &[Vec<Point2>]) -> f64 {
    let mut gap: f64 = 0.0;
    for pair in branches.windows(2) {
        gap = gap.max(pair[0].last().unwrap().distance(pair[1][0]));
    }
    if let (Some(first), Some(last)) = (branches.first(), branches.last()) {
        gap = gap.max(last.last().unwrap().distance(first[0]));
    }
    gap
}
