//! Inversive geometry of the circle tractrices: the pencil of asymptotic
//! circles, inversions pairing the tractrix types, and the tractrix as an
//! orthogonal trajectory of the circles of radius T around the leading point.

use crate::circle::{
    arc_limit, classify, trace_cartesian, uniform_grid, LeashParams, TractrixClass,
};
use crate::curve::LeadingCurve;
use crate::error::{Error, Result};
use crate::geometry::{Point2, Pose, Rigid2, Trace};

/// a (x^2 + y^2) + b x + c y + d = 0
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitCircle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl ImplicitCircle {
    pub fn eval(&self, p: Point2) -> f64 {
        self.a * p.norm_sq() + self.b * p.x + self.c * p.y + self.d
    }

    /// Center and radius; `None` for a line (a = 0) or an empty circle.
    pub fn center_radius(&self) -> Option<(Point2, f64)> {
        if self.a == 0.0 {
            return None;
        }
        let c = Point2::new(-self.b / (2.0 * self.a), -self.c / (2.0 * self.a));
        let r2 = c.norm_sq() - self.d / self.a;
        (r2 >= 0.0).then(|| (c, r2.sqrt()))
    }
}

/// Asymptotic circle of one member of the short-leash pencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PencilMember {
    Circle {
        center: Point2,
        radius: f64,
        implicit: ImplicitCircle,
    },
    /// w = 0: the asymptote of the line tractrix.
    Line { implicit: ImplicitCircle },
}

impl PencilMember {
    pub fn implicit(&self) -> ImplicitCircle {
        match *self {
            PencilMember::Circle { implicit, .. } | PencilMember::Line { implicit } => implicit,
        }
    }

    /// `n` points on the member (a segment of length 20T for the line).
    pub fn boundary_points(&self, n: usize, leash: f64) -> Vec<Point2> {
        match *self {
            PencilMember::Circle { center, radius, .. } => (0..n)
                .map(|i| {
                    let a = std::f64::consts::TAU * i as f64 / n as f64;
                    center + Point2::polar(a) * radius
                })
                .collect(),
            PencilMember::Line { .. } => uniform_grid(-10.0 * leash, 10.0 * leash, n.max(2))
                .into_iter()
                .map(|y| Point2::new(0.0, y))
                .collect(),
        }
    }
}

/// Asymptotic circle of the tractrix with shape parameter |w| < 1 in the
/// canonical placement: w (x^2 + y^2 + T^2) + 2 T x = 0.
pub fn pencil_asymptotic_circle(w: f64, leash: f64) -> Result<PencilMember> {
    if !(w.abs() < 1.0) || !(leash > 0.0 && leash.is_finite()) {
        return Err(Error::InvalidParams {
            w,
            leash,
            reason: "the pencil consists of short-leash tractrices, |w| < 1, T > 0",
        });
    }
    let implicit = ImplicitCircle {
        a: w,
        b: 2.0 * leash,
        c: 0.0,
        d: w * leash * leash,
    };
    if w == 0.0 {
        return Ok(PencilMember::Line { implicit });
    }
    Ok(PencilMember::Circle {
        center: Point2::new(-leash / w, 0.0),
        radius: leash * (1.0 - w * w).sqrt() / w.abs(),
        implicit,
    })
}

/// Limit points of the pencil, 2T apart.
pub fn pencil_foci(leash: f64) -> [Point2; 2] {
    [Point2::new(-leash, 0.0), Point2::new(leash, 0.0)]
}

/// Power of `p` with respect to a member; equal for all members on the
/// radical axis x = 0.
pub fn pencil_power(member: &PencilMember, p: Point2) -> f64 {
    let c = member.implicit();
    if c.a == 0.0 {
        c.eval(p)
    } else {
        c.eval(p) / c.a
    }
}

/// Short-leash tractrices sharing leash and start pose.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilSpec {
    pub leash: f64,
    pub start: Pose,
    pub w_grid: Vec<f64>,
}

impl PencilSpec {
    pub fn new(leash: f64, start: Pose, w_grid: Vec<f64>) -> Result<Self> {
        for &w in &w_grid {
            pencil_asymptotic_circle(w, leash)?;
        }
        Ok(PencilSpec {
            leash,
            start,
            w_grid,
        })
    }

    /// Rigid motion carrying the canonical start pose (T, 0, pi) onto `start`.
    pub fn placement(&self) -> Rigid2 {
        let rot = self.start.tangent_angle - std::f64::consts::PI;
        let moved = Point2::new(self.leash, 0.0).rotate(rot);
        Rigid2::new(rot, self.start.position - moved)
    }

    pub fn foci(&self) -> [Point2; 2] {
        let m = self.placement();
        pencil_foci(self.leash).map(|p| m.apply(p))
    }

    /// Members' asymptotic circles as placed: (w, center, radius), with an
    /// infinite radius for the line.
    pub fn members(&self) -> Vec<(f64, Point2, f64)> {
        let m = self.placement();
        self.w_grid
            .iter()
            .map(
                |&w| match pencil_asymptotic_circle(w, self.leash).expect("checked in new") {
                    PencilMember::Circle { center, radius, .. } => (w, m.apply(center), radius),
                    PencilMember::Line { .. } => (w, m.apply(Point2::ORIGIN), f64::INFINITY),
                },
            )
            .collect()
    }

    /// The tractrices themselves over s in [0, s_max].
    pub fn traces(&self, s_max: f64, n: usize) -> Result<Vec<Trace>> {
        let m = self.placement();
        self.w_grid
            .iter()
            .map(|&w| {
                let p = LeashParams::new(w, self.leash)?;
                Ok(trace_cartesian(&p, &uniform_grid(0.0, s_max, n))?.transformed(&m))
            })
            .collect()
    }
}

/// Inversion with signed power; a negative power adds a half turn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionSpec {
    pub center: Point2,
    pub power: f64,
}

impl InversionSpec {
    pub fn new(center: Point2, power: f64) -> Result<Self> {
        if power == 0.0 || !power.is_finite() || !center.is_finite() {
            return Err(Error::OutOfRange {
                what: "inversion power",
                value: power,
            });
        }
        Ok(InversionSpec { center, power })
    }

    /// Inversion in the limit circle of the leading circle, I^2 = R^2 - T^2.
    pub fn for_circle_family(p: &LeashParams) -> Result<Self> {
        let lead = p.leading_curve();
        let center = lead.center().ok_or(Error::InvalidParams {
            w: p.w,
            leash: p.leash,
            reason: "a line has no inversion center",
        })?;
        let r = p.radius();
        Self::new(center, r * r - p.leash * p.leash)
    }
}

pub fn apply_inversion(spec: &InversionSpec, p: Point2) -> Result<Point2> {
    let d = p - spec.center;
    let n2 = d.norm_sq();
    if n2 == 0.0 {
        return Err(Error::AtCenter);
    }
    Ok(spec.center + d * (spec.power / n2))
}

/// Image of the tangent vector `v` at `p`.
pub fn inversion_differential(spec: &InversionSpec, p: Point2, v: Point2) -> Result<Point2> {
    let d = p - spec.center;
    let n2 = d.norm_sq();
    if n2 == 0.0 {
        return Err(Error::AtCenter);
    }
    Ok((v * (1.0 / n2) - d * (2.0 * d.dot(v) / (n2 * n2))) * spec.power)
}

/// Unsigned angle between two directions, in [0, pi/2] for lines.
fn line_angle(a: Point2, b: Point2) -> f64 {
    (a.cross(b).abs()).atan2(a.dot(b).abs())
}

/// |angle(v1, v2) - angle(dI v1, dI v2)| for two curves crossing at `p`.
pub fn angle_defect(spec: &InversionSpec, p: Point2, v1: Point2, v2: Point2) -> Result<f64> {
    let before = line_angle(v1, v2);
    let after = line_angle(
        inversion_differential(spec, p, v1)?,
        inversion_differential(spec, p, v2)?,
    );
    Ok((before - after).abs())
}

/// Distance from `p` to the curve sampled by `points`: a quadratic through
/// three consecutive samples is minimized around every sample that could be
/// the closest (windings may be closer together than the sample spacing).
pub fn distance_to_trace(p: Point2, points: &[Point2]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::TooFewPoints);
    }
    let d: Vec<f64> = points.iter().map(|q| q.distance(p)).collect();
    let d0 = d.iter().copied().fold(f64::INFINITY, f64::min);
    if points.len() < 3 {
        return Ok(d0);
    }
    let spacing = points
        .windows(2)
        .map(|w| w[0].distance(w[1]))
        .fold(0.0f64, f64::max);
    let mut best = d0;
    for (i, &di) in d.iter().enumerate() {
        if di <= d0 + spacing {
            best = best.min(quadratic_distance(p, points, i));
        }
    }
    Ok(best)
}

fn quadratic_distance(p: Point2, points: &[Point2], i: usize) -> f64 {
    let j = i.clamp(1, points.len() - 2);
    let (pm, p0, pp) = (points[j - 1], points[j], points[j + 1]);
    // q(u) = p0 + u b + u^2 c, u in [-1, 1]
    let b = (pp - pm) * 0.5;
    let c = (pp + pm - p0 * 2.0) * 0.5;
    let dist = |u: f64| (p0 + b * u + c * (u * u)).distance(p);
    let mut u = (i as f64) - (j as f64);
    for _ in 0..30 {
        let r = p0 + b * u + c * (u * u) - p;
        let dq = b + c * (2.0 * u);
        let g = r.dot(dq);
        let h = dq.norm_sq() + r.dot(c * 2.0);
        if h <= 0.0 {
            break;
        }
        let next = (u - g / h).clamp(-1.0, 1.0);
        let done = (next - u).abs() < 1e-15;
        u = next;
        if done {
            break;
        }
    }
    dist(u).min(points[i].distance(p))
}

fn max_distance(images: &[Point2], reference: &[Point2]) -> Result<f64> {
    images
        .iter()
        .try_fold(0.0f64, |m, &p| Ok(m.max(distance_to_trace(p, reference)?)))
}

fn short_leash_pair(w: f64, leash: f64) -> Result<()> {
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::InvalidParams {
            w,
            leash,
            reason: "the T3/T5 pairing needs 0 < w < 1",
        });
    }
    Ok(())
}

/// Samples per unit of arc for reference traces.
const REFERENCE_DENSITY: f64 = 2000.0;

fn reference_points(p: &LeashParams, s_max: f64) -> Result<Vec<Point2>> {
    let n = ((s_max * REFERENCE_DENSITY) as usize).max(1000);
    Ok(trace_cartesian(p, &uniform_grid(0.0, s_max, n))?
        .points()
        .collect())
}

/// Inverts `samples` points of the external short-leash tractrix (0 < w < 1)
/// in its limit circle and returns the largest distance of the images from
/// the internal tractrix with parameter -w, reflected onto the same leading
/// circle.
pub fn verify_t3_t5_duality(leash: f64, w: f64, samples: usize) -> Result<f64> {
    short_leash_pair(w, leash)?;
    let ext = LeashParams::new(w, leash)?;
    let int = LeashParams::new(-w, leash)?;
    let inv = InversionSpec::for_circle_family(&ext)?;
    let s_max = 6.0 * leash / w;
    let src = trace_cartesian(&ext, &uniform_grid(0.0, s_max, samples.max(2)))?;
    let images = src
        .points()
        .map(|p| apply_inversion(&inv, p))
        .collect::<Result<Vec<_>>>()?;
    let flip = Rigid2::mirror_y_axis();
    let reference: Vec<Point2> = reference_points(&int, 2.0 * s_max)?
        .into_iter()
        .map(|p| flip.apply(p))
        .collect();
    max_distance(&images, &reference)
}

/// Inverts the long-leash tractrix (w > 1) with the negative power
/// R^2 - T^2 and measures the images against the reverse tractrix.
pub fn verify_t1_reverse_duality(leash: f64, w: f64, samples: usize) -> Result<f64> {
    if classify(w, leash)? != TractrixClass::T1 {
        return Err(Error::InvalidParams {
            w,
            leash,
            reason: "needs a long-leash tractrix, w > 1",
        });
    }
    let fwd = LeashParams::new(w, leash)?;
    let rev = LeashParams::new(-w, -leash)?;
    let inv = InversionSpec::for_circle_family(&fwd)?;
    let s1 = arc_limit(&fwd).expect("long leash has finite length");
    let src = trace_cartesian(&fwd, &uniform_grid(0.0, s1, samples.max(2)))?;
    let images = src
        .points()
        .map(|p| apply_inversion(&inv, p))
        .collect::<Result<Vec<_>>>()?;
    let s1r = arc_limit(&rev).unwrap_or(s1);
    max_distance(&images, &reference_points(&rev, s1r)?)
}

/// Point of the involute of the circle (center, radius a) that starts at
/// angle 0 and unwinds with orientation `sign`.
pub fn circle_involute(center: Point2, a: f64, alpha: f64, sign: f64) -> Point2 {
    let (s, c) = alpha.sin_cos();
    center + Point2::new(c + alpha * s, sign * (s - alpha * c)) * a
}

/// Inverts the polar tractrix (T = R) in the circle of radius 2R around the
/// leading center and returns the largest distance of the images from the
/// involute of that circle starting at the follower's start point.
pub fn verify_t2_involute(leash: f64, samples: usize) -> Result<f64> {
    let p = LeashParams::new(1.0, leash)?;
    let center = p.leading_curve().center().expect("w = 1 is a circle");
    let a = 2.0 * leash;
    let inv = InversionSpec::new(center, a * a)?;
    let src = trace_cartesian(&p, &uniform_grid(0.0, 8.0 * leash, samples.max(3)))?;
    let images = src
        .points()
        .map(|q| apply_inversion(&inv, q))
        .collect::<Result<Vec<_>>>()?;
    let sign = images
        .iter()
        .map(|q| (*q - center).y)
        .find(|y| y.abs() > 1e-9 * leash)
        .map_or(1.0, f64::signum);
    Ok(images.iter().fold(0.0f64, |m, &q| {
        let r = q.distance(center) / a;
        let alpha = (r * r - 1.0).max(0.0).sqrt();
        m.max(q.distance(circle_involute(center, a, alpha, sign)))
    }))
}

/// Largest |<tangent, circle tangent>| over up to `samples` trace points,
/// where the circle has radius T around the matching leading point. Zero
/// when the tractrix crosses every such circle at a right angle.
pub fn verify_orthogonality(
    leading: &dyn LeadingCurve,
    trace: &Trace,
    samples: usize,
) -> Result<f64> {
    if trace.is_empty() || samples == 0 {
        return Err(Error::TooFewPoints);
    }
    let stride = (trace.len() / samples).max(1);
    let mut worst: f64 = 0.0;
    for (i, smp) in trace.samples.iter().enumerate().step_by(stride) {
        if !smp.l.is_finite() {
            return Err(Error::NonFinite("leading arc length"));
        }
        let a = leading.sample(smp.l).point;
        let radial = a - smp.pose.position;
        let n = radial.norm();
        if n == 0.0 {
            return Err(Error::DuplicatePoint(i));
        }
        let circle_tangent = Point2::new(-radial.y, radial.x) * (1.0 / n);
        worst = worst.max(smp.pose.direction().dot(circle_tangent).abs());
    }
    Ok(worst)
}
