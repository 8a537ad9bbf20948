//! Planar geometry primitives and the trace containers shared by every engine.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Unit vector at `angle`.
    pub fn polar(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point2 { x: c, y: s }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        self + (other - self) * t
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Position plus tangent direction. The angle is kept in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub position: Point2,
    pub tangent_angle: f64,
}

impl Pose {
    pub fn new(position: Point2, tangent_angle: f64) -> Self {
        Pose {
            position,
            tangent_angle: wrap_angle(tangent_angle),
        }
    }

    pub fn direction(&self) -> Point2 {
        Point2::polar(self.tangent_angle)
    }
}

/// Reduces `a` into (-pi, pi].
pub fn normalize_angle(a: f64) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::NonFinite("angle"));
    }
    Ok(wrap_angle(a))
}

/// Infallible variant of [`normalize_angle`] for values already known to be finite.
pub(crate) fn wrap_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}

/// Orientation-preserving or reversing rigid motion: optional mirror about the
/// x axis, then rotation, then translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rigid2 {
    pub mirror_x_axis: bool,
    pub rotation: f64,
    pub translation: Point2,
}

impl Rigid2 {
    pub const IDENTITY: Rigid2 = Rigid2 {
        mirror_x_axis: false,
        rotation: 0.0,
        translation: Point2::ORIGIN,
    };

    pub fn new(rotation: f64, translation: Point2) -> Self {
        Rigid2 {
            mirror_x_axis: false,
            rotation,
            translation,
        }
    }

    /// Reflection y -> -y.
    pub fn mirror() -> Self {
        Rigid2 {
            mirror_x_axis: true,
            ..Rigid2::IDENTITY
        }
    }

    /// Reflection x -> -x.
    pub fn mirror_y_axis() -> Self {
        Rigid2 {
            mirror_x_axis: true,
            rotation: PI,
            translation: Point2::ORIGIN,
        }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let q = if self.mirror_x_axis {
            Point2::new(p.x, -p.y)
        } else {
            p
        };
        q.rotate(self.rotation) + self.translation
    }

    pub fn apply_angle(&self, a: f64) -> f64 {
        let a = if self.mirror_x_axis { -a } else { a };
        a + self.rotation
    }

    pub fn apply_pose(&self, pose: Pose) -> Pose {
        Pose::new(
            self.apply(pose.position),
            self.apply_angle(pose.tangent_angle),
        )
    }
}

/// One point of a traced tractrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    /// Arc length travelled by the leading point.
    pub l: f64,
    /// Arc length of the tractrix.
    pub s: f64,
    /// Angle between the leading direction and the tractrix tangent.
    pub nu: f64,
    pub pose: Pose,
    /// Signed curvature; infinite at cusps and at the start/stop points.
    pub curvature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchKind {
    /// Leash went slack (pull-only mode); the trace ends here.
    StopSlack,
    /// nu crossed +-pi/2 in push-pull mode: the leash sign flips and the
    /// tractrix has a cusp.
    CuspReversal,
    /// A corner impulse pushed nu across +-pi/2 in push-pull mode.
    CornerReversal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSwitch {
    /// Index into [`Trace::samples`].
    pub index: usize,
    pub l_at: f64,
    pub kind: SwitchKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    ReachedLength,
    /// Leash went slack with nu at the given boundary value.
    Stopped {
        nu: f64,
    },
    /// One full period of a periodic leading curve was traced.
    Closed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub samples: Vec<TraceSample>,
    pub mode_switches: Vec<ModeSwitch>,
    /// Indices of samples sitting on a corner of the leading curve.
    pub corners: Vec<usize>,
    pub termination: Termination,
}

impl Trace {
    pub fn new(samples: Vec<TraceSample>) -> Self {
        Trace {
            samples,
            mode_switches: Vec::new(),
            corners: Vec::new(),
            termination: Termination::ReachedLength,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> Option<&TraceSample> {
        self.samples.first()
    }

    pub fn last(&self) -> Option<&TraceSample> {
        self.samples.last()
    }

    pub fn points(&self) -> impl Iterator<Item = Point2> + '_ {
        self.samples.iter().map(|s| s.pose.position)
    }

    /// Applies a rigid motion (possibly orientation reversing) to every sample.
    /// A reflection flips the sign of nu and curvature.
    pub fn transformed(&self, motion: &Rigid2) -> Trace {
        let flip = if motion.mirror_x_axis { -1.0 } else { 1.0 };
        let samples = self
            .samples
            .iter()
            .map(|s| TraceSample {
                pose: motion.apply_pose(s.pose),
                nu: flip * s.nu,
                curvature: flip * s.curvature,
                ..*s
            })
            .collect();
        Trace {
            samples,
            mode_switches: self.mode_switches.clone(),
            corners: self.corners.clone(),
            termination: match self.termination {
                Termination::Stopped { nu } => Termination::Stopped { nu: flip * nu },
                t => t,
            },
        }
    }

    /// Sample indices split at cusps, so each run is a smooth branch.
    pub fn branches(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for sw in &self.mode_switches {
            if sw.kind != SwitchKind::StopSlack && sw.index > start {
                out.push(start..sw.index + 1);
                start = sw.index;
            }
        }
        if start < self.samples.len() {
            out.push(start..self.samples.len());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn normalize_examples() {
        assert_abs_diff_eq!(normalize_angle(3.0 * PI).unwrap(), PI, epsilon = 1e-15);
        assert_eq!(normalize_angle(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            normalize_angle(-1.5 * PI).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-15
        );
        assert_eq!(normalize_angle(-PI).unwrap(), PI);
        assert!(normalize_angle(f64::NAN).is_err());
        assert!(normalize_angle(f64::INFINITY).is_err());
    }

    proptest! {
        #[test]
        fn normalize_is_congruent(a in -1e4f64..1e4) {
            let r = normalize_angle(a).unwrap();
            prop_assert!(r > -PI && r <= PI);
            let k = ((a - r) / TAU).round();
            prop_assert!((a - r - k * TAU).abs() < 1e-9);
        }
    }

    #[test]
    fn mirror_then_rotate() {
        let m = Rigid2 {
            mirror_x_axis: true,
            rotation: FRAC_PI_2,
            translation: Point2::new(1.0, 0.0),
        };
        let p = m.apply(Point2::new(1.0, 2.0));
        assert_abs_diff_eq!(p.x, 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 1.0, epsilon = 1e-15);
        let q = Rigid2::mirror_y_axis().apply(Point2::new(1.0, 2.0));
        assert_abs_diff_eq!(q.x, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y, 2.0, epsilon = 1e-15);
    }
}
