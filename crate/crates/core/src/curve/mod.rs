//! Leading curves in arc-length form: l -> (point, theta, curvature).

mod chain;
mod circle;
mod parametric;
mod polyline;

pub use chain::{Chain, Reversed};
pub use circle::CircleCurve;
pub use parametric::{
    archimedean_spiral, ellipse, lemniscate, parabola, sinusoid, Jet, ParametricCurve, PlaneMap,
};
pub use polyline::{resample_polyline, Polyline};

use crate::geometry::Point2;

/// Leading curve evaluated at one arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub point: Point2,
    /// Unwrapped tangent direction.
    pub theta: f64,
    /// Signed curvature, d(theta)/dl away from corners.
    pub curvature: f64,
}

/// Curvature impulse: theta jumps by `turn` at arc length `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corner {
    pub l: f64,
    pub turn: f64,
}

/// Translation symmetry of a periodic curve: advancing `length` along the
/// curve translates by `shift` and adds `turn` (a multiple of 2pi) to theta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Period {
    pub length: f64,
    pub shift: Point2,
    pub turn: f64,
}

/// A planar curve parametrized by arc length.
///
/// `sample` is right-continuous at corners; `sample_left` returns the
/// left limit there.
pub trait LeadingCurve: Send + Sync {
    fn sample(&self, l: f64) -> CurveSample;

    fn sample_left(&self, l: f64) -> CurveSample {
        self.sample(l)
    }

    /// Total arc length; `None` when unbounded.
    fn length(&self) -> Option<f64>;

    fn period(&self) -> Option<Period> {
        None
    }

    /// Corners with `from < l <= to`, in increasing order.
    fn corners(&self, _from: f64, _to: f64) -> Vec<Corner> {
        Vec::new()
    }

    /// Points with `from < l <= to` where the curvature may be discontinuous
    /// (corners included). Integrators never step across one.
    fn breakpoints(&self, from: f64, to: f64) -> Vec<f64> {
        self.corners(from, to).into_iter().map(|c| c.l).collect()
    }

    /// Largest |curvature| over the curve (or one period), excluding corner
    /// impulses.
    fn max_abs_curvature(&self) -> f64 {
        let span = self
            .period()
            .map(|p| p.length)
            .or(self.length())
            .unwrap_or(100.0);
        (0..=2048)
            .map(|i| self.sample(span * i as f64 / 2048.0).curvature.abs())
            .fold(0.0, f64::max)
    }

    fn has_corners(&self) -> bool {
        let span = self
            .period()
            .map(|p| p.length)
            .or(self.length())
            .unwrap_or(0.0);
        !self.corners(-1e-12, span).is_empty()
    }
}

impl<C: LeadingCurve + ?Sized> LeadingCurve for Box<C> {
    fn sample(&self, l: f64) -> CurveSample {
        (**self).sample(l)
    }
    fn sample_left(&self, l: f64) -> CurveSample {
        (**self).sample_left(l)
    }
    fn length(&self) -> Option<f64> {
        (**self).length()
    }
    fn period(&self) -> Option<Period> {
        (**self).period()
    }
    fn corners(&self, from: f64, to: f64) -> Vec<Corner> {
        (**self).corners(from, to)
    }
    fn breakpoints(&self, from: f64, to: f64) -> Vec<f64> {
        (**self).breakpoints(from, to)
    }
    fn max_abs_curvature(&self) -> f64 {
        (**self).max_abs_curvature()
    }
}

impl<C: LeadingCurve + ?Sized> LeadingCurve for &C {
    fn sample(&self, l: f64) -> CurveSample {
        (**self).sample(l)
    }
    fn sample_left(&self, l: f64) -> CurveSample {
        (**self).sample_left(l)
    }
    fn length(&self) -> Option<f64> {
        (**self).length()
    }
    fn period(&self) -> Option<Period> {
        (**self).period()
    }
    fn corners(&self, from: f64, to: f64) -> Vec<Corner> {
        (**self).corners(from, to)
    }
    fn breakpoints(&self, from: f64, to: f64) -> Vec<f64> {
        (**self).breakpoints(from, to)
    }
    fn max_abs_curvature(&self) -> f64 {
        (**self).max_abs_curvature()
    }
}

/// Splits `l` into a whole number of periods and a remainder in [0, length).
pub(crate) fn reduce_period(l: f64, length: f64) -> (f64, f64) {
    let k = (l / length).floor();
    let mut r = l - k * length;
    if r >= length {
        r -= length;
        return (k + 1.0, r.max(0.0));
    }
    (k, r.max(0.0))
}
