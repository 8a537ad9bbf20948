//! Closed-form tractrices of circles and lines.
//!
//! Canonical placement throughout: the leading circle starts at the origin
//! heading north (theta(0) = pi/2), the follower starts at (T, 0) with tangent
//! direction pi. The shape parameter w = K*T alone fixes the type. A negative
//! leash length T together with w < -1 describes the push-mode (reverse)
//! tractrix of the long-leash case.

pub mod errata;
mod polar;

pub use polar::{
    polar_hyperbolic, polar_trigonometric, sector_width, spiral_polar_explicit, star_branches,
    star_closure_gap, star_shape_parameter, trace_polar, PolarPoint,
};

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fmt;

use crate::curve::CircleCurve;
use crate::error::{Error, Result};
use crate::geometry::{Point2, Pose, Rigid2, Termination, Trace, TraceSample};
use crate::numeric::{atan_ratio, sinc, tan_ratio};

/// Which sign of the natural equation: `Plus` has increasing curvature,
/// `Minus` is its mirror image (y -> -y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeashParams {
    /// Signed leash length; negative only for the reverse (push) tractrix.
    pub leash: f64,
    /// Signed curvature of the leading circle as placed (0 for a line).
    pub curvature: f64,
    pub w: f64,
    pub sign_branch: Branch,
}

impl LeashParams {
    pub fn new(w: f64, leash: f64) -> Result<Self> {
        Self::with_branch(w, leash, Branch::Plus)
    }

    pub fn with_branch(w: f64, leash: f64, sign_branch: Branch) -> Result<Self> {
        classify(w, leash)?;
        Ok(LeashParams {
            leash,
            curvature: sign_branch.sign() * w / leash,
            w,
            sign_branch,
        })
    }

    /// From the geometric curvature of the leading circle; w = +-K*T.
    pub fn from_curvature(curvature: f64, leash: f64, sign_branch: Branch) -> Result<Self> {
        if !curvature.is_finite() {
            return Err(Error::NonFinite("curvature"));
        }
        Self::with_branch(sign_branch.sign() * curvature * leash, leash, sign_branch)
    }

    /// Radius of the leading circle, infinite for a line.
    pub fn radius(&self) -> f64 {
        (self.leash / self.w).abs()
    }

    /// The leading circle in the canonical placement of this branch.
    pub fn leading_curve(&self) -> CircleCurve {
        let start = match self.sign_branch {
            Branch::Plus => FRAC_PI_2,
            Branch::Minus => -FRAC_PI_2,
        };
        CircleCurve {
            start: Point2::ORIGIN,
            theta0: start,
            curvature: self.curvature,
        }
    }

    /// Canonical start pose of the follower.
    pub fn start_pose(&self) -> Pose {
        Pose::new(Point2::new(self.leash.abs(), 0.0), PI)
    }

    fn mirror(&self) -> Option<Rigid2> {
        (self.sign_branch == Branch::Minus).then(Rigid2::mirror)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TractrixClass {
    T1,
    T2,
    T3,
    T4,
    T5,
    Trivial,
    Reverse,
}

impl TractrixClass {
    pub fn description(self) -> &'static str {
        match self {
            TractrixClass::T1 => "external, long leash",
            TractrixClass::T2 => "polar/spiral",
            TractrixClass::T3 => "external, short leash",
            TractrixClass::T4 => "tractrix of a line",
            TractrixClass::T5 => "internal",
            TractrixClass::Trivial => "trivial, constant angle",
            TractrixClass::Reverse => "reverse of a long-leash tractrix",
        }
    }
}

impl fmt::Display for TractrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            TractrixClass::T1 => "T1",
            TractrixClass::T2 => "T2",
            TractrixClass::T3 => "T3",
            TractrixClass::T4 => "T4",
            TractrixClass::T5 => "T5",
            TractrixClass::Trivial => "Trivial",
            TractrixClass::Reverse => "Reverse",
        };
        f.write_str(tag)
    }
}

/// Type of the tractrix with shape parameter `w` and signed leash length.
pub fn classify(w: f64, leash: f64) -> Result<TractrixClass> {
    if !w.is_finite() {
        return Err(Error::NonFinite("w"));
    }
    if !leash.is_finite() {
        return Err(Error::NonFinite("leash length"));
    }
    let bad = |reason: &'static str| Error::InvalidParams { w, leash, reason };
    if leash == 0.0 {
        return Err(bad("leash length must be nonzero"));
    }
    if leash < 0.0 {
        return if w < -1.0 {
            Ok(TractrixClass::Reverse)
        } else {
            Err(bad("a negative leash length needs w < -1"))
        };
    }
    Ok(match w {
        w if w > 1.0 => TractrixClass::T1,
        1.0 => TractrixClass::T2,
        w if w > 0.0 => TractrixClass::T3,
        0.0 => TractrixClass::T4,
        w if w > -1.0 => TractrixClass::T5,
        _ => return Err(bad("w must exceed -1")),
    })
}

/// Arc length S1 of a finite tractrix, `None` when unbounded.
pub fn arc_limit(p: &LeashParams) -> Option<f64> {
    (p.w.abs() > 1.0).then(|| p.leash * ((p.w + 1.0) / (p.w - 1.0)).ln())
}

/// Arc length of the inflection point (external tractrices only).
pub fn inflection(p: &LeashParams) -> Option<f64> {
    (p.w > 0.0 && p.leash > 0.0).then(|| p.leash * ((p.w + 1.0) / p.w).ln())
}

/// cos/sin of xi and t = tan(xi/2) at one arc length, computed without
/// cancellation near either end of the domain.
#[derive(Debug, Clone, Copy)]
struct XiState {
    cos: f64,
    sin: f64,
    t: f64,
    /// 1 + cos xi
    op: f64,
}

fn xi_state(s: f64, w: f64, leash: f64) -> XiState {
    let x = -s / leash;
    let e = x.exp();
    let om = ((1.0 + w) * -x.exp_m1()).max(0.0);
    let op = ((1.0 - w) + (1.0 + w) * e).max(0.0);
    let t = if op == 0.0 {
        f64::INFINITY
    } else {
        (om / op).sqrt()
    };
    XiState {
        cos: 0.5 * (op - om),
        sin: (om * op).sqrt(),
        t,
        op,
    }
}

fn check_domain(s: f64, p: &LeashParams) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::NonFinite("arc length"));
    }
    let limit = arc_limit(p).unwrap_or(f64::INFINITY);
    if s < 0.0 || s > limit * (1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::OutOfDomain { s, limit });
    }
    Ok(s.min(limit))
}

/// Curvature k(s) of the natural equation. For the reverse tractrix the
/// curvature is taken relative to |T|, which is the orientation under which
/// the reversal identity holds.
pub fn natural_curvature(s: f64, p: &LeashParams) -> Result<f64> {
    let s = check_domain(s, p)?;
    let st = xi_state(s, p.w, p.leash);
    Ok(p.sign_branch.sign() * -st.cos / (p.leash.abs() * st.sin))
}

/// xi(s) in [0, pi]; cos xi = -sin nu.
pub fn xi_of_s(s: f64, p: &LeashParams) -> Result<f64> {
    let s = check_domain(s, p)?;
    let st = xi_state(s, p.w, p.leash);
    Ok(st.sin.atan2(st.cos))
}

/// t = tan(xi/2); infinite at the far end of a finite tractrix.
pub fn t_of_s(s: f64, p: &LeashParams) -> Result<f64> {
    let s = check_domain(s, p)?;
    Ok(xi_state(s, p.w, p.leash).t)
}

/// Inverse of [`t_of_s`].
pub fn s_of_t(t: f64, p: &LeashParams) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
        });
    }
    if t.is_infinite() {
        return arc_limit(p).ok_or(Error::OutOfRange {
            what: "t",
            value: t,
        });
    }
    let t2 = t * t;
    let arg = -2.0 * t2 / ((1.0 + t2) * (1.0 + p.w));
    if arg <= -1.0 {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
        });
    }
    Ok(-p.leash * arg.ln_1p())
}

fn leading_arc_state(s: f64, st: &XiState, w: f64, leash: f64) -> f64 {
    let a = leash.abs();
    if st.t.is_infinite() {
        return a * PI / (w * w - 1.0).sqrt();
    }
    let z = (w - 1.0) / (w + 1.0) * st.t * st.t;
    if z < -0.25 {
        // artanh near 1 from 1 - x^2 = 2 e^{-s/T} / (1 + cos xi)
        let x = (-z).sqrt();
        let at = x.ln_1p() - 0.5 * (LN_2 - s / leash - st.op.ln());
        return 2.0 * a * at / (1.0 - w * w).sqrt();
    }
    2.0 * a / (w + 1.0).abs() * st.t * atan_ratio(z)
}

/// Arc length l(s) travelled by the leading point.
pub fn leading_arc(s: f64, p: &LeashParams) -> Result<f64> {
    let s = check_domain(s, p)?;
    let st = xi_state(s, p.w, p.leash);
    Ok(leading_arc_state(s, &st, p.w, p.leash))
}

/// Polar angle psi = K l travelled along the leading circle.
pub fn psi_of_s(s: f64, p: &LeashParams) -> Result<f64> {
    Ok(p.w / p.leash * leading_arc(s, p)?)
}

/// t as a function of the leading arc l (inverse of the l(s) relation).
pub fn t_of_leading_arc(l: f64, p: &LeashParams) -> Result<f64> {
    if !(l >= 0.0) {
        return Err(Error::OutOfRange {
            what: "leading arc",
            value: l,
        });
    }
    let (w, a) = (p.w, p.leash.abs());
    let y = (w * w - 1.0) * l * l / (4.0 * a * a);
    if y >= PI * PI / 4.0 {
        if (y - PI * PI / 4.0).abs() <= 1e-15 {
            return Ok(f64::INFINITY);
        }
        return Err(Error::OutOfRange {
            what: "leading arc",
            value: l,
        });
    }
    Ok(l * (w + 1.0).abs() / (2.0 * a) * tan_ratio(y))
}

/// Tractrix arc length reached when the leader has travelled `l`.
pub fn arc_of_leading(l: f64, p: &LeashParams) -> Result<f64> {
    s_of_t(t_of_leading_arc(l, p)?, p)
}

/// nu = theta - tau as a function of the leading arc.
pub fn nu_of_leading_arc(l: f64, p: &LeashParams) -> Result<f64> {
    let t = t_of_leading_arc(l, p)?;
    Ok(p.sign_branch.sign() * (2.0 * t.atan() - FRAC_PI_2))
}

/// One closed-form sample in the canonical placement of the `Plus` branch.
fn sample_plus(s: f64, p: &LeashParams) -> TraceSample {
    let (w, leash) = (p.w, p.leash);
    let st = xi_state(s, w, leash);
    let l = leading_arc_state(s, &st, w, leash);
    let psi = w / leash * l;
    let xi = st.sin.atan2(st.cos);
    let x = -w * l * l / (2.0 * leash) * sinc(0.5 * psi).powi(2) + leash * (psi - xi).cos();
    let y = l * sinc(psi) + leash * (psi - xi).sin();
    TraceSample {
        l,
        s,
        nu: xi - FRAC_PI_2,
        pose: Pose::new(Point2::new(x, y), PI + psi - xi),
        curvature: -st.cos / (leash * st.sin),
    }
}

/// Closed-form trace over an increasing grid of tractrix arc lengths.
pub fn trace_cartesian(p: &LeashParams, s_grid: &[f64]) -> Result<Trace> {
    let mut samples = Vec::with_capacity(s_grid.len());
    let mut prev = f64::NEG_INFINITY;
    for &s in s_grid {
        let s = check_domain(s, p)?;
        if s <= prev {
            return Err(Error::Invalid("arc-length grid must increase".into()));
        }
        prev = s;
        samples.push(sample_plus(s, p));
    }
    let mut trace = Trace::new(samples);
    if let (Some(limit), Some(last)) = (arc_limit(p), trace.last()) {
        if last.s >= limit {
            trace.termination = Termination::Stopped { nu: FRAC_PI_2 };
        }
    }
    Ok(match p.mirror() {
        Some(m) => trace.transformed(&m),
        None => trace,
    })
}

/// Follower position at arc length `s`.
pub fn position(s: f64, p: &LeashParams) -> Result<Point2> {
    let s = check_domain(s, p)?;
    let b = sample_plus(s, p).pose.position;
    Ok(match p.mirror() {
        Some(m) => m.apply(b),
        None => b,
    })
}

/// Evenly spaced grid on [from, to] with `n` points.
pub fn uniform_grid(from: f64, to: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..n)
            .map(|i| {
                if i + 1 == n {
                    to
                } else {
                    from + (to - from) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// The line tractrix as an explicit graph y(x), 0 < x <= T.
pub fn line_tractrix_explicit(x: f64, leash: f64) -> Result<f64> {
    if !(leash > 0.0) || !leash.is_finite() {
        return Err(Error::OutOfRange {
            what: "leash length",
            value: leash,
        });
    }
    if !(x > 0.0 && x <= leash) {
        return Err(Error::OutOfRange {
            what: "x",
            value: x,
        });
    }
    let r = (1.0 - (x / leash).powi(2)).max(0.0).sqrt();
    Ok(leash * (r.atanh() - r))
}

/// Constant-angle solution for a short leash.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrivialTractrix {
    /// Concentric circle of radius sqrt(R^2 - T^2).
    Circle {
        center: Point2,
        radius: f64,
        nu: f64,
    },
    /// Line case: the follower trails directly behind on the leading line.
    Line { through: Point2, direction: f64 },
}

impl TrivialTractrix {
    pub fn curvature(&self) -> f64 {
        match self {
            TrivialTractrix::Circle { radius, .. } => 1.0 / radius,
            TrivialTractrix::Line { .. } => 0.0,
        }
    }

    /// Distance of a point from the circle or line.
    pub fn distance(&self, p: Point2) -> f64 {
        match *self {
            TrivialTractrix::Circle { center, radius, .. } => (p.distance(center) - radius).abs(),
            TrivialTractrix::Line { through, direction } => {
                Point2::polar(direction).cross(p - through).abs()
            }
        }
    }
}

/// The trivial tractrix of the leading circle of `p` (canonical placement).
pub fn trivial_tractrix(p: &LeashParams) -> Result<TrivialTractrix> {
    if p.w.abs() >= 1.0 || p.leash <= 0.0 {
        return Err(Error::InvalidParams {
            w: p.w,
            leash: p.leash,
            reason: "a trivial tractrix needs |w| < 1",
        });
    }
    let lead = p.leading_curve();
    Ok(match lead.center() {
        None => TrivialTractrix::Line {
            through: Point2::new(0.0, -p.leash),
            direction: lead.theta0,
        },
        Some(center) => {
            let r = p.radius();
            TrivialTractrix::Circle {
                center,
                radius: (r * r - p.leash * p.leash).sqrt(),
                nu: p.sign_branch.sign() * p.w.asin(),
            }
        }
    })
}

/// Largest |-k(S1 - s; w, T) - k(s; -w, -T)| over the grid.
pub fn reverse_identity_check(w: f64, leash: f64, s_grid: &[f64]) -> Result<f64> {
    let fwd = LeashParams::new(w, leash)?;
    let rev = LeashParams::new(-w, -leash)?;
    let s1 = arc_limit(&fwd).ok_or(Error::InvalidParams {
        w,
        leash,
        reason: "the reversal identity needs w > 1",
    })?;
    let mut worst: f64 = 0.0;
    for &s in s_grid {
        let a = -natural_curvature((s1 - s).max(0.0), &fwd)?;
        let b = natural_curvature(s, &rev)?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

/// Closed-form description of one circle or line tractrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleTractrix {
    pub params: LeashParams,
    pub class: TractrixClass,
    pub s1: Option<f64>,
    pub s0: Option<f64>,
}

impl CircleTractrix {
    pub fn new(params: LeashParams) -> Result<Self> {
        let class = classify(params.w, params.leash)?;
        Ok(CircleTractrix {
            params,
            class,
            s1: arc_limit(&params),
            s0: inflection(&params),
        })
    }

    pub fn curvature(&self, s: f64) -> Result<f64> {
        natural_curvature(s, &self.params)
    }

    pub fn leading_arc(&self, s: f64) -> Result<f64> {
        leading_arc(s, &self.params)
    }

    pub fn position(&self, s: f64) -> Result<Point2> {
        position(s, &self.params)
    }

    pub fn trace(&self, s_grid: &[f64]) -> Result<Trace> {
        trace_cartesian(&self.params, s_grid)
    }

    /// `n` samples from s = 0 to min(S1, s_max).
    pub fn trace_uniform(&self, s_max: f64, n: usize) -> Result<Trace> {
        let end = self.s1.map_or(s_max, |s1| s1.min(s_max));
        self.trace(&uniform_grid(0.0, end, n.max(2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::integrate;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn params(w: f64, t: f64) -> LeashParams {
        LeashParams::new(w, t).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(classify(2.0, 1.0), Ok(TractrixClass::T1));
        assert_eq!(classify(1.0, 1.0), Ok(TractrixClass::T2));
        assert_eq!(classify(0.3, 1.0), Ok(TractrixClass::T3));
        assert_eq!(classify(0.0, 1.0), Ok(TractrixClass::T4));
        assert_eq!(classify(-0.5, 1.0), Ok(TractrixClass::T5));
        assert_eq!(classify(-2.0, -1.0), Ok(TractrixClass::Reverse));
        assert!(classify(-1.0, 1.0).is_err());
        assert!(classify(-2.0, 1.0).is_err());
        assert!(classify(0.5, -1.0).is_err());
        assert!(classify(0.5, 0.0).is_err());
    }

    #[test]
    fn arc_limits() {
        assert_abs_diff_eq!(
            arc_limit(&params(3.0, 1.0)).unwrap(),
            2f64.ln(),
            epsilon = 1e-15
        );
        assert_eq!(arc_limit(&params(1.0, 1.0)), None);
        assert_eq!(arc_limit(&params(0.5, 2.0)), None);
        // S1 is the root of the radicand
        let p = params(3.0, 1.0);
        let s1 = arc_limit(&p).unwrap();
        let c = -3.0 + 4.0 * (-s1).exp();
        assert_abs_diff_eq!(c, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            arc_limit(&params(-3.0, -1.0)).unwrap(),
            2f64.ln(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn curvature_values() {
        for w in [-0.5, 0.0, 0.5, 1.0, 3.0] {
            let k = natural_curvature(0.0, &params(w, 1.0)).unwrap();
            assert_eq!(k, f64::NEG_INFINITY);
        }
        // line tractrix: k = -1/(T sqrt(e^{2s/T} - 1)); at e^{2s} = 4
        let k = natural_curvature(0.5 * 4f64.ln(), &params(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(k, -1.0 / 3f64.sqrt(), epsilon = 1e-15);
        let p = params(2.0, 1.0);
        let s0 = inflection(&p).unwrap();
        assert_abs_diff_eq!(natural_curvature(s0, &p).unwrap(), 0.0, epsilon = 1e-15);
        assert!(natural_curvature(-0.1, &p).is_err());
        assert!(natural_curvature(2.0, &p).is_err());
        let m = LeashParams::with_branch(2.0, 1.0, Branch::Minus).unwrap();
        assert_abs_diff_eq!(
            natural_curvature(0.3, &m).unwrap(),
            -natural_curvature(0.3, &p).unwrap()
        );
    }

    #[test]
    fn xi_and_t() {
        let p = params(0.0, 1.0);
        assert_eq!(xi_of_s(0.0, &p).unwrap(), 0.0);
        assert_eq!(t_of_s(0.0, &p).unwrap(), 0.0);
        let s = 2f64.ln();
        assert_abs_diff_eq!(xi_of_s(s, &p).unwrap(), PI / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t_of_s(s, &p).unwrap(), (PI / 6.0).tan(), epsilon = 1e-15);
        let q = params(3.0, 1.0);
        let s1 = arc_limit(&q).unwrap();
        assert_abs_diff_eq!(xi_of_s(s1, &q).unwrap(), PI, epsilon = 1e-7);
        assert!(t_of_s(s1, &q).unwrap() > 1e7);
        for &(w, t) in &[(3.0, 0.7), (0.5, 1.2), (-0.5, 0.4), (1.0, 5.0)] {
            let p = params(w, 1.3);
            let s = s_of_t(t, &p).unwrap();
            assert_abs_diff_eq!(t_of_s(s, &p).unwrap(), t, epsilon = 1e-12);
        }
    }

    #[test]
    fn leading_arc_against_quadrature() {
        // l(s) = int_0^s ds / sin xi; substitute s = u^2 to remove the
        // endpoint singularity
        for &(w, leash, s) in &[
            (0.5f64, 1.0f64, 1.0f64),
            (3.0, 1.0, 0.5),
            (-0.5, 2.0, 3.0),
            (1.0, 1.0, 2.0),
        ] {
            let p = params(w, leash);
            let integrand = |u: f64| {
                let sg = u * u;
                let c = -w + (1.0 + w) * (-sg / leash).exp();
                2.0 * u / (1.0 - c * c).sqrt()
            };
            let oracle = integrate(1e-300, s.sqrt(), 400, integrand);
            assert_abs_diff_eq!(leading_arc(s, &p).unwrap(), oracle, epsilon = 1e-10);
        }
        let p = params(1.0, 2.0);
        assert_abs_diff_eq!(
            leading_arc(1.0, &p).unwrap(),
            2.0 * t_of_s(1.0, &p).unwrap(),
            epsilon = 1e-15
        );
        assert_eq!(leading_arc(0.0, &params(0.5, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn leading_arc_is_continuous_in_w() {
        for s in [0.2, 1.0, 3.0] {
            for (w, d) in [(1.0, 1e-6), (0.0, 1e-6)] {
                let exact = leading_arc(s, &params(w, 1.0)).unwrap();
                for ww in [w - d, w + d] {
                    let l = leading_arc(s, &params(ww, 1.0)).unwrap();
                    assert!((l - exact).abs() < 1e-4, "w={ww} s={s}");
                }
            }
        }
    }

    #[test]
    fn large_arc_does_not_overflow() {
        let p = params(0.5, 1.0);
        let l = leading_arc(800.0, &p).unwrap();
        assert!(l.is_finite());
        // dl/ds -> 1/cos(nu*) far out
        let d = leading_arc(801.0, &p).unwrap() - l;
        assert_abs_diff_eq!(d, 1.0 / (1.0 - 0.25f64).sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn psi_signs() {
        let p = params(0.0, 1.0);
        assert_eq!(psi_of_s(3.0, &p).unwrap(), 0.0);
        let q = params(-0.5, 1.0);
        assert_eq!(psi_of_s(0.0, &q).unwrap(), 0.0);
        let a = psi_of_s(0.5, &q).unwrap();
        let b = psi_of_s(1.5, &q).unwrap();
        assert!(a < 0.0 && b < a);
    }

    #[test]
    fn start_pose_and_line_form() {
        let p = params(2.0, 1.5);
        let tr = trace_cartesian(&p, &[0.0]).unwrap();
        let s = tr.samples[0];
        assert_abs_diff_eq!(s.pose.position.x, 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.pose.position.y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.pose.tangent_angle, PI, epsilon = 1e-15);
        let q = params(0.0, 1.0);
        for t in [0.1, 0.5, 0.9] {
            let s = s_of_t(t, &q).unwrap();
            let b = position(s, &q).unwrap();
            let t2 = t * t;
            assert_abs_diff_eq!(b.x, (1.0 - t2) / (1.0 + t2), epsilon = 1e-14);
            let y = ((1.0 + t) / (1.0 - t)).ln() - 2.0 * t / (1.0 + t2);
            assert_abs_diff_eq!(b.y, y, epsilon = 1e-13);
            assert_abs_diff_eq!(
                line_tractrix_explicit(b.x, 1.0).unwrap(),
                b.y,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn line_explicit() {
        assert_eq!(line_tractrix_explicit(2.0, 2.0).unwrap(), 0.0);
        let r = 3f64.sqrt() / 2.0;
        assert_abs_diff_eq!(
            line_tractrix_explicit(1.0, 2.0).unwrap(),
            2.0 * (r.atanh() - r),
            epsilon = 1e-15
        );
        assert!(line_tractrix_explicit(1e-12, 1.0).unwrap() > 25.0);
        assert!(line_tractrix_explicit(0.0, 1.0).is_err());
        assert!(line_tractrix_explicit(1.5, 1.0).is_err());
    }

    #[test]
    fn leash_and_tangent_relations() {
        for &(w, leash) in &[
            (3.0, 1.0),
            (1.0, 1.0),
            (0.5, 2.0),
            (0.0, 1.0),
            (-0.5, 1.0),
            (-3.0, -1.0),
        ] {
            let p = params(w, leash);
            let tr = CircleTractrix::new(p)
                .unwrap()
                .trace_uniform(8.0, 60)
                .unwrap();
            let lead = p.leading_curve();
            use crate::curve::LeadingCurve;
            for s in &tr.samples {
                let a = lead.sample(s.l);
                assert_abs_diff_eq!(
                    a.point.distance(s.pose.position),
                    leash.abs(),
                    epsilon = 1e-10
                );
                // tangent along the leash line
                let d = a.point - s.pose.position;
                assert!(d.cross(s.pose.direction()).abs() < 1e-10 * leash.abs());
                if s.curvature.is_finite() && s.nu.cos() > 1e-6 {
                    assert_abs_diff_eq!(s.nu.tan() / leash, s.curvature, epsilon = 1e-8);
                }
            }
        }
    }

    #[test]
    fn trivial_circle() {
        let p = LeashParams::from_curvature(0.2, 3.0, Branch::Plus).unwrap();
        match trivial_tractrix(&p).unwrap() {
            TrivialTractrix::Circle { radius, nu, .. } => {
                assert_abs_diff_eq!(radius, 4.0, epsilon = 1e-14);
                assert_abs_diff_eq!(nu.tan() / 3.0, 1.0 / 16f64.sqrt(), epsilon = 1e-15);
            }
            other => panic!("{other:?}"),
        }
        let q = LeashParams::from_curvature(0.2, 1e-9, Branch::Plus).unwrap();
        match trivial_tractrix(&q).unwrap() {
            TrivialTractrix::Circle { radius, .. } => {
                assert_abs_diff_eq!(radius, 5.0, epsilon = 1e-12)
            }
            other => panic!("{other:?}"),
        }
        assert!(trivial_tractrix(&params(2.0, 1.0)).is_err());
        assert!(matches!(
            trivial_tractrix(&params(0.0, 1.0)).unwrap(),
            TrivialTractrix::Line { .. }
        ));
    }

    #[test]
    fn asymptotic_approach() {
        for w in [0.5, 0.0, -0.5] {
            let p = params(w, 1.0);
            let triv = trivial_tractrix(&p).unwrap();
            let d: Vec<f64> = [5.0, 10.0, 20.0]
                .iter()
                .map(|&s| triv.distance(position(s, &p).unwrap()))
                .collect();
            assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
        }
    }

    #[test]
    fn reversal_identity() {
        let p = params(3.0, 1.0);
        let s1 = arc_limit(&p).unwrap();
        assert!(reverse_identity_check(3.0, 1.0, &[0.5 * s1]).unwrap() < 1e-14);
        for &(w, leash) in &[(2.0, 1.0), (1.5, 0.7)] {
            let s1 = arc_limit(&params(w, leash)).unwrap();
            let grid: Vec<f64> = (0..100).map(|i| s1 * (i as f64 + 0.5) / 100.0).collect();
            assert!(reverse_identity_check(w, leash, &grid).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn mirror_branch() {
        let plus = params(0.5, 1.0);
        let minus = LeashParams::with_branch(0.5, 1.0, Branch::Minus).unwrap();
        let a = position(1.0, &plus).unwrap();
        let b = position(1.0, &minus).unwrap();
        assert_eq!(b, Point2::new(a.x, -a.y));
        assert_eq!(minus.leading_curve().center(), Some(Point2::new(-2.0, 0.0)));
    }

    proptest! {
        #[test]
        fn curvature_increases(w in -0.99f64..6.0, leash in 0.1f64..5.0, a in 0.001f64..0.999, b in 0.001f64..0.999) {
            prop_assume!((a - b).abs() > 1e-3);
            let p = params(w, leash);
            let span = arc_limit(&p).unwrap_or(10.0 * leash);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(natural_curvature(lo * span, &p).unwrap() < natural_curvature(hi * span, &p).unwrap());
        }

        #[test]
        fn inflection_changes_sign(w in 0.01f64..20.0, leash in 0.1f64..5.0) {
            let p = params(w, leash);
            let s0 = inflection(&p).unwrap();
            prop_assert!(natural_curvature(s0, &p).unwrap().abs() < 1e-10 / leash);
            prop_assert!(natural_curvature(s0 * 0.99, &p).unwrap() < 0.0);
            let after = (s0 * 1.01).min(arc_limit(&p).map_or(f64::INFINITY, |s1| 0.5 * (s0 + s1)));
            prop_assert!(natural_curvature(after, &p).unwrap() > 0.0);
        }

        #[test]
        fn leading_arc_round_trip(w in -0.99f64..6.0, leash in 0.1f64..5.0, frac in 0.0f64..0.98) {
            let p = params(w, leash);
            let s = frac * arc_limit(&p).unwrap_or(6.0 * leash);
            let l = leading_arc(s, &p).unwrap();
            let back = arc_of_leading(l, &p).unwrap();
            prop_assert!((back - s).abs() < 1e-9 * (1.0 + s));
        }
    }
}
