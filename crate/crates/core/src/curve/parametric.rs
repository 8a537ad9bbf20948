//! Analytic curves given by a parameter map, reparametrized by arc length
//! through a Gauss-Legendre length table and Newton inversion.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{reduce_period, CurveSample, LeadingCurve, Period};
use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, Point2};
use crate::numeric::gauss_legendre8;

/// Second-order forward-mode jet: a value with its first two derivatives in
/// the curve parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub fn variable(t: f64) -> Jet {
        Jet {
            v: t,
            d1: 1.0,
            d2: 0.0,
        }
    }

    pub fn constant(c: f64) -> Jet {
        Jet {
            v: c,
            d1: 0.0,
            d2: 0.0,
        }
    }

    pub fn sin(self) -> Jet {
        let (s, c) = self.v.sin_cos();
        Jet {
            v: s,
            d1: c * self.d1,
            d2: -s * self.d1 * self.d1 + c * self.d2,
        }
    }

    pub fn cos(self) -> Jet {
        let (s, c) = self.v.sin_cos();
        Jet {
            v: c,
            d1: -s * self.d1,
            d2: -c * self.d1 * self.d1 - s * self.d2,
        }
    }

    pub fn sqrt(self) -> Jet {
        let r = self.v.sqrt();
        let d1 = 0.5 * self.d1 / r;
        Jet {
            v: r,
            d1,
            d2: (0.5 * self.d2 - d1 * d1) / r,
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet {
            v: self.v - o.v,
            d1: self.d1 - o.d1,
            d2: self.d2 - o.d2,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let v = self.v / o.v;
        let d1 = (self.d1 - v * o.d1) / o.v;
        let d2 = (self.d2 - 2.0 * d1 * o.d1 - v * o.d2) / o.v;
        Jet { v, d1, d2 }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            v: -self.v,
            d1: -self.d1,
            d2: -self.d2,
        }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        Jet {
            v: self.v + c,
            ..self
        }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        Jet {
            v: self.v * c,
            d1: self.d1 * c,
            d2: self.d2 * c,
        }
    }
}

/// A parameter map t -> (x(t), y(t)) evaluated on jets.
pub trait PlaneMap: Send + Sync {
    fn eval(&self, t: Jet) -> [Jet; 2];
}

impl<F> PlaneMap for F
where
    F: Fn(Jet) -> [Jet; 2] + Send + Sync,
{
    fn eval(&self, t: Jet) -> [Jet; 2] {
        self(t)
    }
}

struct Panel {
    t: f64,
    cum: f64,
    theta: f64,
}

/// Arc-length form of a regular parametric curve on [t0, t1].
pub struct ParametricCurve {
    name: String,
    map: Box<dyn PlaneMap>,
    t1: f64,
    panels: Vec<Panel>,
    length: f64,
    /// Translation per period; `None` for an open curve.
    periodic_shift: Option<Point2>,
    turn: f64,
}

impl fmt::Debug for ParametricCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricCurve")
            .field("name", &self.name)
            .field("length", &self.length)
            .field("periodic_shift", &self.periodic_shift)
            .finish()
    }
}

const DEFAULT_PANELS: usize = 2048;

impl ParametricCurve {
    /// `periodic_shift`: when set, [t0, t1] is one period and the curve
    /// repeats translated by this vector.
    pub fn new(
        name: impl Into<String>,
        map: impl PlaneMap + 'static,
        t0: f64,
        t1: f64,
        periodic_shift: Option<Point2>,
    ) -> Result<Self> {
        Self::with_panels(name, map, t0, t1, periodic_shift, DEFAULT_PANELS)
    }

    pub fn with_panels(
        name: impl Into<String>,
        map: impl PlaneMap + 'static,
        t0: f64,
        t1: f64,
        periodic_shift: Option<Point2>,
        panels: usize,
    ) -> Result<Self> {
        if !(t0.is_finite() && t1.is_finite()) || t1 <= t0 || panels == 0 {
            return Err(Error::Invalid(format!("bad parameter range [{t0}, {t1}]")));
        }
        let mut curve = ParametricCurve {
            name: name.into(),
            map: Box::new(map),
            t1,
            panels: Vec::with_capacity(panels + 1),
            length: 0.0,
            periodic_shift,
            turn: 0.0,
        };
        let h = (t1 - t0) / panels as f64;
        let mut cum = 0.0;
        let mut theta = curve.derivs(t0).0.angle();
        for i in 0..=panels {
            let t = if i == panels { t1 } else { t0 + h * i as f64 };
            if i > 0 {
                let prev = curve.panels[i - 1].t;
                cum += gauss_legendre8(prev, t, |u| curve.speed(u));
                let dir = curve.derivs(t).0.angle();
                theta += wrap_angle(dir - theta);
            }
            if !cum.is_finite() {
                return Err(Error::NonFinite("curve length"));
            }
            curve.panels.push(Panel { t, cum, theta });
        }
        curve.length = cum;
        curve.turn = theta - curve.panels[0].theta;
        if curve.length <= 0.0 {
            return Err(Error::Invalid("curve has zero length".into()));
        }
        Ok(curve)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn total_length(&self) -> f64 {
        self.length
    }

    /// Total tangent turning over [t0, t1].
    pub fn total_turn(&self) -> f64 {
        self.turn
    }

    /// Parameter value at arc length `l` (within the first period).
    pub fn parameter_at(&self, l: f64) -> f64 {
        self.invert(l.clamp(0.0, self.length)).0
    }

    pub fn point_at_parameter(&self, t: f64) -> Point2 {
        let [x, y] = self.map.eval(Jet::constant(t));
        Point2::new(x.v, y.v)
    }

    fn derivs(&self, t: f64) -> (Point2, Point2, Point2) {
        let [x, y] = self.map.eval(Jet::variable(t));
        (
            Point2::new(x.d1, y.d1),
            Point2::new(x.d2, y.d2),
            Point2::new(x.v, y.v),
        )
    }

    fn speed(&self, t: f64) -> f64 {
        self.derivs(t).0.norm()
    }

    /// Newton inversion of the length table; returns (t, panel index).
    fn invert(&self, r: f64) -> (f64, usize) {
        let n = self.panels.len() - 1;
        let idx = self.panels[1..].partition_point(|p| p.cum <= r).min(n - 1);
        let p = &self.panels[idx];
        let hi = self.panels[idx + 1].t;
        let mut t = p.t + (r - p.cum) / self.speed(p.t);
        t = t.clamp(p.t, hi);
        for _ in 0..12 {
            let f = p.cum + gauss_legendre8(p.t, t, |u| self.speed(u)) - r;
            let step = f / self.speed(t);
            t = (t - step).clamp(p.t, hi);
            if step.abs() <= 1e-16 * (1.0 + t.abs()) {
                break;
            }
        }
        (t, idx)
    }
}

impl LeadingCurve for ParametricCurve {
    fn sample(&self, l: f64) -> CurveSample {
        let (k, r) = match self.periodic_shift {
            Some(_) => reduce_period(l, self.length),
            None => (0.0, l.clamp(0.0, self.length)),
        };
        let (t, idx) = self.invert(r);
        let (d1, d2, pos) = self.derivs(t);
        let speed = d1.norm();
        let base = self.panels[idx].theta;
        let theta = base + wrap_angle(d1.angle() - base);
        let mut point = pos;
        let mut theta = theta;
        if let Some(shift) = self.periodic_shift {
            point = point + shift * k;
            theta += k * self.turn;
        }
        CurveSample {
            point,
            theta,
            curvature: d1.cross(d2) / (speed * speed * speed),
        }
    }

    fn length(&self) -> Option<f64> {
        self.periodic_shift.is_none().then_some(self.length)
    }

    fn period(&self) -> Option<Period> {
        self.periodic_shift.map(|shift| Period {
            length: self.length,
            shift,
            turn: self.turn,
        })
    }

    fn max_abs_curvature(&self) -> f64 {
        let n = 4 * (self.panels.len() - 1);
        let t0 = self.panels[0].t;
        let h = (self.t1 - t0) / n as f64;
        (0..=n)
            .map(|i| {
                let (d1, d2, _) = self.derivs(t0 + h * i as f64);
                (d1.cross(d2) / d1.norm().powi(3)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Ellipse (a cos t, b sin t), counter-clockwise from (a, 0).
pub fn ellipse(a: f64, b: f64) -> Result<ParametricCurve> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::OutOfRange {
            what: "ellipse semi-axis",
            value: a.min(b),
        });
    }
    ParametricCurve::new(
        format!("ellipse(a={a}, b={b})"),
        move |t: Jet| [t.cos() * a, t.sin() * b],
        0.0,
        TAU,
        Some(Point2::ORIGIN),
    )
}

/// y = amplitude * sin(2 pi x / wavelength); one wavelength per period.
pub fn sinusoid(amplitude: f64, wavelength: f64) -> Result<ParametricCurve> {
    if !(wavelength > 0.0) || !amplitude.is_finite() {
        return Err(Error::OutOfRange {
            what: "sinusoid wavelength",
            value: wavelength,
        });
    }
    let k = TAU / wavelength;
    ParametricCurve::new(
        format!("sinusoid(amplitude={amplitude}, wavelength={wavelength})"),
        move |t: Jet| [t, (t * k).sin() * amplitude],
        0.0,
        wavelength,
        Some(Point2::new(wavelength, 0.0)),
    )
}

/// Lemniscate of Bernoulli with half-width `a`.
pub fn lemniscate(a: f64) -> Result<ParametricCurve> {
    if !(a > 0.0) {
        return Err(Error::OutOfRange {
            what: "lemniscate size",
            value: a,
        });
    }
    ParametricCurve::new(
        format!("lemniscate(a={a})"),
        move |t: Jet| {
            let s = t.sin();
            let c = t.cos();
            let d = s * s + 1.0;
            [c * a / d, s * c * a / d]
        },
        0.0,
        TAU,
        Some(Point2::ORIGIN),
    )
}

/// Archimedean spiral p = pitch * phi for phi in [phi0, phi1]; negative phi
/// is the opposite arm through the origin.
pub fn archimedean_spiral(pitch: f64, phi0: f64, phi1: f64) -> Result<ParametricCurve> {
    if !(pitch > 0.0) {
        return Err(Error::OutOfRange {
            what: "spiral pitch",
            value: pitch,
        });
    }
    let panels = (((phi1 - phi0).abs() / PI).ceil() as usize * 512).max(DEFAULT_PANELS);
    ParametricCurve::with_panels(
        format!("archimedean-spiral(pitch={pitch})"),
        move |t: Jet| [t * t.cos() * pitch, t * t.sin() * pitch],
        phi0,
        phi1,
        None,
        panels,
    )
}

/// y = c x^2 for x in [x0, x1].
pub fn parabola(c: f64, x0: f64, x1: f64) -> Result<ParametricCurve> {
    ParametricCurve::new(
        format!("parabola(c={c})"),
        move |t: Jet| [t, t * t * c],
        x0,
        x1,
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::tests::check_arc_length_form;
    use crate::numeric::integrate;
    use approx::assert_abs_diff_eq;

    #[test]
    fn jet_quotient_rule() {
        let t = Jet::variable(0.7);
        let f = t.sin() / (t * t + 1.0);
        let h = 1e-4;
        let g = |x: f64| x.sin() / (x * x + 1.0);
        assert_abs_diff_eq!(f.d1, (g(0.7 + h) - g(0.7 - h)) / (2.0 * h), epsilon = 1e-8);
        assert_abs_diff_eq!(
            f.d2,
            (g(0.7 + h) - 2.0 * g(0.7) + g(0.7 - h)) / (h * h),
            epsilon = 1e-6
        );
        let r = (t * t + 1.0).sqrt();
        assert_abs_diff_eq!(r.d1, 0.7 / (1.49f64).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn ellipse_perimeter_and_period() {
        let e = ellipse(2.0, 1.0).unwrap();
        // independent quadrature of the speed
        let l = integrate(0.0, TAU, 400, |t| {
            (4.0 * t.sin().powi(2) + t.cos().powi(2)).sqrt()
        });
        assert_abs_diff_eq!(e.total_length(), l, epsilon = 1e-12);
        assert_abs_diff_eq!(e.total_length(), 9.688_448_220_547_675, epsilon = 1e-12);
        assert_abs_diff_eq!(e.total_turn(), TAU, epsilon = 1e-12);
        let a = e.sample(0.0);
        let b = e.sample(e.total_length());
        assert_eq!(a.point, b.point);
        assert_abs_diff_eq!(b.theta - a.theta, TAU, epsilon = 1e-12);
        // curvature at the end of the major axis is a/b^2
        assert_abs_diff_eq!(a.curvature, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.max_abs_curvature(), 2.0, epsilon = 1e-9);
    }

    #[test]
    fn arc_length_forms() {
        let e = ellipse(2.0, 1.0).unwrap();
        check_arc_length_form(&e, &[0.1, 1.7, 4.0, 9.0, 12.0], 1e-4, 1e-7);
        let s = sinusoid(0.5, TAU).unwrap();
        check_arc_length_form(&s, &[0.2, 3.0, 8.0], 1e-4, 1e-7);
        let lem = lemniscate(1.0).unwrap();
        check_arc_length_form(&lem, &[0.3, 1.3, 2.6, 4.5], 1e-4, 1e-6);
        let sp = archimedean_spiral(1.0, -6.0, 6.0).unwrap();
        check_arc_length_form(&sp, &[1.0, 15.0, 20.0], 1e-4, 1e-7);
    }

    #[test]
    fn spiral_length_has_closed_form() {
        let sp = archimedean_spiral(1.5, -4.0, 3.0).unwrap();
        let f = |p: f64| 0.5 * 1.5 * (p * (1.0 + p * p).sqrt() + p.asinh());
        assert_abs_diff_eq!(sp.total_length(), f(3.0) - f(-4.0), epsilon = 1e-11);
        // curvature at the pole is 2/pitch
        let l0 = -f(-4.0);
        assert_abs_diff_eq!(sp.sample(l0).curvature, 2.0 / 1.5, epsilon = 1e-9);
        assert_abs_diff_eq!(sp.parameter_at(l0), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sinusoid_translates_per_period() {
        let s = sinusoid(0.3, 2.0).unwrap();
        let p = s.period().unwrap();
        assert_eq!(p.shift, Point2::new(2.0, 0.0));
        assert_abs_diff_eq!(p.turn, 0.0, epsilon = 1e-12);
        let a = s.sample(0.4);
        let b = s.sample(0.4 + p.length);
        assert_abs_diff_eq!(b.point.x - a.point.x, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.point.y, a.point.y, epsilon = 1e-12);
    }
}
