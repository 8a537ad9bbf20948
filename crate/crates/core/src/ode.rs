//! Tractrix of an arbitrary leading curve by integrating the leash angle
//! dnu/dl = q(l) - sin(nu)/T in the leader's arc length.
//!
//! The state is (nu, sigma): nu stays in [-pi/2, pi/2] and sigma = +-1 is the
//! sign of the effective leash length. Pull mode has sigma = +1; in push-pull
//! mode nu crossing +-pi/2 flips sigma and re-enters from the opposite
//! boundary, which leaves the follower position continuous and turns the
//! tangent by pi (a cusp).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::curve::LeadingCurve;
use crate::error::{Error, Result};
use crate::geometry::{ModeSwitch, Point2, Pose, SwitchKind, Termination, Trace, TraceSample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    PullOnly,
    PushPull,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    /// Leash length; a negative value starts in the push regime.
    pub leash: f64,
    /// Base step in l; `None` picks min(|T|, min radius of curvature)/200.
    pub step: Option<f64>,
    /// Step divisor used while cos(nu) < 0.25 (fixed-step runs only).
    pub refine: f64,
    /// Arc length of the leading curve to traverse.
    pub max_arc: f64,
    pub mode: Mode,
    pub nu0: f64,
    /// Local error tolerance for step-doubling control; `None` runs fixed steps.
    pub tolerance: Option<f64>,
}

impl IntegratorConfig {
    pub fn new(leash: f64, max_arc: f64) -> Self {
        IntegratorConfig {
            leash,
            step: None,
            refine: 4.0,
            max_arc,
            mode: Mode::PullOnly,
            nu0: -FRAC_PI_2,
            tolerance: None,
        }
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.step = Some(h);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_nu0(mut self, nu0: f64) -> Self {
        self.nu0 = nu0;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }

    pub fn with_refine(mut self, refine: f64) -> Self {
        self.refine = refine;
        self
    }

    pub fn default_step(&self, curve: &dyn LeadingCurve) -> f64 {
        let qmax = curve.max_abs_curvature();
        let rmin = if qmax > 0.0 {
            1.0 / qmax
        } else {
            f64::INFINITY
        };
        self.leash.abs().min(rmin) / 200.0
    }

    fn validate(&self) -> Result<()> {
        if !self.leash.is_finite() || self.leash == 0.0 {
            return Err(Error::OutOfRange {
                what: "leash length",
                value: self.leash,
            });
        }
        if !(self.nu0.abs() <= FRAC_PI_2 + 1e-15) {
            return Err(Error::OutOfRange {
                what: "initial angle nu0",
                value: self.nu0,
            });
        }
        if !(self.max_arc > 0.0 && self.max_arc.is_finite()) {
            return Err(Error::OutOfRange {
                what: "max arc",
                value: self.max_arc,
            });
        }
        if !(self.refine >= 1.0) {
            return Err(Error::OutOfRange {
                what: "refinement factor",
                value: self.refine,
            });
        }
        if let Some(h) = self.step {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::OutOfRange {
                    what: "step",
                    value: h,
                });
            }
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return Err(Error::OutOfRange {
                    what: "tolerance",
                    value: t,
                });
            }
        }
        Ok(())
    }
}

/// One accepted point of the angle solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuSample {
    pub l: f64,
    pub nu: f64,
    /// Leading-curve direction used at this sample (left limit before a corner).
    pub theta: f64,
    /// Sign of the effective leash length.
    pub sigma: f64,
    /// dnu/dl arriving from the previous interval.
    pub dnu_in: f64,
    /// dnu/dl leaving into the next interval.
    pub dnu_out: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Corner,
    CornerReversal,
    Cusp,
    Slack,
}

/// An event at sample `index`. Corners and cusps are stored as a pair of
/// samples at the same l: `index` (before) and `index + 1` (after).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathEvent {
    pub index: usize,
    pub l: f64,
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NuPath {
    pub samples: Vec<NuSample>,
    pub events: Vec<PathEvent>,
    pub termination: Termination,
    /// |T|
    pub leash: f64,
}

impl NuPath {
    pub fn last(&self) -> &NuSample {
        self.samples.last().expect("path always has a start sample")
    }

    /// Physical leash angle at the end, in (-pi, pi]: nu shifted by pi when
    /// the leash sign has flipped relative to pull orientation.
    pub fn final_physical_angle(&self) -> f64 {
        physical_angle(self.last().nu, self.last().sigma)
    }
}

pub(crate) fn physical_angle(nu: f64, sigma: f64) -> f64 {
    if sigma > 0.0 {
        nu
    } else if nu > 0.0 {
        nu - PI
    } else {
        nu + PI
    }
}

/// Splits a physical angle into (nu, sigma) with nu in [-pi/2, pi/2].
pub(crate) fn split_physical(a: f64) -> (f64, f64) {
    let a = crate::geometry::wrap_angle(a);
    if a.abs() <= FRAC_PI_2 {
        (a, 1.0)
    } else if a > 0.0 {
        (a - PI, -1.0)
    } else {
        (a + PI, -1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CornerOutcome {
    /// nu after the jump; the leash stays taut.
    Continue(f64),
    /// Pull mode: the leash goes slack at the corner.
    Stop(f64),
    /// Push-pull mode: the jump crossed +-pi/2; nu re-entered from the other
    /// boundary and the leash sign flips.
    Reversed(f64),
}

/// Effect of a curvature impulse `delta_theta` on nu. The follower tangent is
/// continuous through a corner, so nu = theta - tau jumps by the same amount.
pub fn corner_jump(nu: f64, delta_theta: f64, mode: Mode) -> Result<CornerOutcome> {
    if !(delta_theta.abs() < PI) {
        return Err(Error::DegenerateCorner(delta_theta));
    }
    let next = nu + delta_theta;
    Ok(match mode {
        Mode::PullOnly if next.abs() >= FRAC_PI_2 => CornerOutcome::Stop(next),
        Mode::PushPull if next.abs() > FRAC_PI_2 => {
            CornerOutcome::Reversed(next - PI * next.signum())
        }
        _ => CornerOutcome::Continue(next),
    })
}

struct Rhs<'a> {
    curve: &'a dyn LeadingCurve,
    leash: f64,
}

impl Rhs<'_> {
    fn eval(&self, l: f64, nu: f64, sigma: f64, left: bool) -> f64 {
        let q = if left {
            self.curve.sample_left(l).curvature
        } else {
            self.curve.sample(l).curvature
        };
        q - nu.sin() / (sigma * self.leash)
    }

    /// Classical RK4 step; the last stage uses the left limit so a step
    /// ending on a breakpoint never sees the next piece.
    fn rk4(&self, l: f64, nu: f64, sigma: f64, h: f64) -> f64 {
        let k1 = self.eval(l, nu, sigma, false);
        let k2 = self.eval(l + 0.5 * h, nu + 0.5 * h * k1, sigma, false);
        let k3 = self.eval(l + 0.5 * h, nu + 0.5 * h * k2, sigma, false);
        let k4 = self.eval(l + h, nu + h * k3, sigma, true);
        nu + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    }
}

const EVENT_TOL: f64 = 1e-12;
const MAX_STEPS: usize = 20_000_000;

/// Integrates the leash angle along `curve` from l = 0 to `cfg.max_arc`
/// (or the end of a finite curve).
pub fn integrate_nu(curve: &dyn LeadingCurve, cfg: &IntegratorConfig) -> Result<NuPath> {
    cfg.validate()?;
    let leash = cfg.leash.abs();
    let rhs = Rhs { curve, leash };
    let h_base = cfg.step.unwrap_or_else(|| cfg.default_step(curve));
    let l_end = match curve.length() {
        Some(len) => cfg.max_arc.min(len),
        None => cfg.max_arc,
    };
    let corners = curve.corners(0.0, l_end);
    let mut breaks = curve.breakpoints(0.0, l_end);
    breaks.push(l_end);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let mut sigma = cfg.leash.signum();
    let mut nu = cfg.nu0.clamp(-FRAC_PI_2, FRAC_PI_2);
    let mut l = 0.0;
    let mut samples = Vec::new();
    let mut events = Vec::new();
    let mut termination = Termination::ReachedLength;

    let make = |l: f64, nu: f64, sigma: f64, left: bool| {
        let theta = if left {
            curve.sample_left(l).theta
        } else {
            curve.sample(l).theta
        };
        let d_in = rhs.eval(l, nu, sigma, true);
        let d_out = rhs.eval(l, nu, sigma, false);
        NuSample {
            l,
            nu,
            theta,
            sigma,
            dnu_in: d_in,
            dnu_out: d_out,
        }
    };

    samples.push(make(l, nu, sigma, false));

    // starting on the boundary with the flow pointing outward
    if nu.abs() == FRAC_PI_2 && rhs.eval(0.0, nu, sigma, false) * nu.signum() > 0.0 {
        match cfg.mode {
            Mode::PullOnly => {
                events.push(PathEvent {
                    index: 0,
                    l,
                    kind: EventKind::Slack,
                });
                return Ok(NuPath {
                    samples,
                    events,
                    termination: Termination::Stopped { nu },
                    leash,
                });
            }
            Mode::PushPull => {
                events.push(PathEvent {
                    index: 0,
                    l,
                    kind: EventKind::Cusp,
                });
                nu = -nu;
                sigma = -sigma;
                samples.push(make(l, nu, sigma, false));
            }
        }
    }

    let mut h_adapt = h_base;
    let mut last_corner_l = f64::NEG_INFINITY;
    let mut bi = 0;
    let mut steps = 0;
    while l < l_end {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::StepRejected { l });
        }
        while bi < breaks.len() && breaks[bi] <= l {
            bi += 1;
        }
        let next_bp = breaks[bi.min(breaks.len() - 1)];
        let scale = if nu.cos() < 0.25 {
            1.0 / cfg.refine
        } else {
            1.0
        };
        let h_nom = match cfg.tolerance {
            Some(_) => h_adapt.min(h_base * 8.0),
            None => h_base * scale,
        };
        let (mut h, mut hits_bp) = (h_nom, false);
        if l + h >= next_bp - 0.01 * h_nom {
            h = next_bp - l;
            hits_bp = true;
        }

        let nu_new = match cfg.tolerance {
            None => rhs.rk4(l, nu, sigma, h),
            Some(tol) => {
                let full = rhs.rk4(l, nu, sigma, h);
                let half = rhs.rk4(l, nu, sigma, 0.5 * h);
                let two = rhs.rk4(l + 0.5 * h, half, sigma, 0.5 * h);
                let err = (two - full).abs() / 15.0;
                let factor = if err == 0.0 {
                    2.0
                } else {
                    (0.9 * (tol / err).powf(0.2)).clamp(0.2, 2.0)
                };
                if err > tol {
                    h_adapt = h * factor;
                    if h_adapt < 1e-14 * (1.0 + l.abs()) {
                        return Err(Error::StepRejected { l });
                    }
                    continue;
                }
                if !hits_bp || factor > 1.0 {
                    h_adapt = (h * factor).max(h_adapt.min(h));
                }
                two + (two - full) / 15.0
            }
        };
        if !nu_new.is_finite() {
            return Err(Error::NonFinite("leash angle"));
        }

        if nu_new.abs() > FRAC_PI_2 {
            // locate the boundary crossing by bisection on the step size
            let (mut lo, mut hi) = (0.0, h);
            while hi - lo > EVENT_TOL {
                let mid = 0.5 * (lo + hi);
                if rhs.rk4(l, nu, sigma, mid).abs() > FRAC_PI_2 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let l_ev = l + 0.5 * (lo + hi);
            let nu_ev = FRAC_PI_2 * nu_new.signum();
            let near_next_corner =
                hits_bp && corners.iter().any(|c| c.l == next_bp) && next_bp - l_ev < EVENT_TOL;
            if cfg.mode == Mode::PushPull && (l_ev - last_corner_l < EVENT_TOL || near_next_corner)
            {
                return Err(Error::CuspAtCorner(l_ev));
            }
            samples.push(make(l_ev, nu_ev, sigma, false));
            let index = samples.len() - 1;
            match cfg.mode {
                Mode::PullOnly => {
                    events.push(PathEvent {
                        index,
                        l: l_ev,
                        kind: EventKind::Slack,
                    });
                    termination = Termination::Stopped { nu: nu_ev };
                    break;
                }
                Mode::PushPull => {
                    events.push(PathEvent {
                        index,
                        l: l_ev,
                        kind: EventKind::Cusp,
                    });
                    sigma = -sigma;
                    nu = -nu_ev;
                    l = l_ev;
                    samples.push(make(l, nu, sigma, false));
                    continue;
                }
            }
        }

        l = if hits_bp { next_bp } else { l + h };
        nu = nu_new;
        let corner = if hits_bp {
            corners.iter().find(|c| c.l == l).copied()
        } else {
            None
        };
        samples.push(make(l, nu, sigma, corner.is_some()));
        if let Some(c) = corner {
            let index = samples.len() - 1;
            match corner_jump(nu, c.turn, cfg.mode)? {
                CornerOutcome::Continue(next) => {
                    events.push(PathEvent {
                        index,
                        l,
                        kind: EventKind::Corner,
                    });
                    nu = next;
                    samples.push(make(l, nu, sigma, false));
                }
                CornerOutcome::Stop(next) => {
                    events.push(PathEvent {
                        index,
                        l,
                        kind: EventKind::Slack,
                    });
                    termination = Termination::Stopped {
                        nu: next.clamp(-FRAC_PI_2, FRAC_PI_2),
                    };
                    break;
                }
                CornerOutcome::Reversed(next) => {
                    events.push(PathEvent {
                        index,
                        l,
                        kind: EventKind::CornerReversal,
                    });
                    nu = next;
                    sigma = -sigma;
                    samples.push(make(l, nu, sigma, false));
                }
            }
            last_corner_l = l;
        }
    }

    Ok(NuPath {
        samples,
        events,
        termination,
        leash,
    })
}

/// Cubic Hermite interpolant of nu on one interval.
#[derive(Debug, Clone, Copy)]
struct Hermite {
    l0: f64,
    h: f64,
    y0: f64,
    y1: f64,
    m0: f64,
    m1: f64,
}

impl Hermite {
    fn between(a: &NuSample, b: &NuSample) -> Self {
        let h = b.l - a.l;
        Hermite {
            l0: a.l,
            h,
            y0: a.nu,
            y1: b.nu,
            m0: a.dnu_out * h,
            m1: b.dnu_in * h,
        }
    }

    fn eval(&self, l: f64) -> f64 {
        let u = (l - self.l0) / self.h;
        let u2 = u * u;
        let u3 = u2 * u;
        (2.0 * u3 - 3.0 * u2 + 1.0) * self.y0
            + (u3 - 2.0 * u2 + u) * self.m0
            + (-2.0 * u3 + 3.0 * u2) * self.y1
            + (u3 - u2) * self.m1
    }

    /// Integral of cos(nu) from l0 to `to`, 3-point Gauss-Legendre on each half.
    fn cos_integral(&self, to: f64) -> f64 {
        const X: f64 = 0.774_596_669_241_483_4;
        let mut acc = 0.0;
        let mid = 0.5 * (self.l0 + to);
        for (a, b) in [(self.l0, mid), (mid, to)] {
            let c = 0.5 * (a + b);
            let r = 0.5 * (b - a);
            acc += r
                * (5.0 / 9.0 * self.eval(c - r * X).cos()
                    + 8.0 / 9.0 * self.eval(c).cos()
                    + 5.0 / 9.0 * self.eval(c + r * X).cos());
        }
        acc
    }
}

/// Tractrix arc length s(l) = integral of cos(nu) dl at every sample, using
/// the cubic Hermite interpolant of nu built from the samples and their
/// derivatives. Paired samples at the same l contribute nothing.
pub fn arc_transfer(samples: &[NuSample]) -> Vec<f64> {
    let mut out = Vec::with_capacity(samples.len());
    let mut s = 0.0;
    for (i, smp) in samples.iter().enumerate() {
        if i > 0 {
            let prev = &samples[i - 1];
            if smp.l > prev.l {
                s += Hermite::between(prev, smp).cos_integral(smp.l);
            }
        }
        out.push(s);
    }
    out
}

fn curvature_of(nu: f64, sigma: f64, leash: f64) -> f64 {
    if nu.abs() >= FRAC_PI_2 {
        nu.signum() * sigma * f64::INFINITY
    } else {
        nu.tan() / (sigma * leash)
    }
}

/// Builds the traced curve: B = A - sigma |T| (cos tau, sin tau) with
/// tau = theta - nu. Paired samples collapse to one: the post-jump sample at
/// corners, the pre-switch sample (infinite curvature) at cusps.
pub fn reconstruct(curve: &dyn LeadingCurve, path: &NuPath, leash: f64) -> Trace {
    let leash = leash.abs();
    let s = arc_transfer(&path.samples);
    let mut skip = vec![false; path.samples.len()];
    for ev in &path.events {
        match ev.kind {
            EventKind::Corner | EventKind::CornerReversal => skip[ev.index] = true,
            EventKind::Cusp if ev.index + 1 < skip.len() => skip[ev.index + 1] = true,
            _ => {}
        }
    }
    let mut index_of = vec![0usize; path.samples.len()];
    let mut samples = Vec::with_capacity(path.samples.len());
    for (i, smp) in path.samples.iter().enumerate() {
        index_of[i] = samples.len();
        if skip[i] {
            continue;
        }
        let a = curve.sample(smp.l).point;
        let tau = smp.theta - smp.nu;
        let b = a - Point2::polar(tau) * (smp.sigma * leash);
        samples.push(TraceSample {
            l: smp.l,
            s: s[i],
            nu: smp.nu,
            pose: Pose::new(b, tau),
            curvature: curvature_of(smp.nu, smp.sigma, leash),
        });
    }
    let mut trace = Trace::new(samples);
    trace.termination = path.termination;
    for ev in &path.events {
        let kind = match ev.kind {
            EventKind::Corner => {
                trace.corners.push(index_of[ev.index + 1]);
                continue;
            }
            EventKind::CornerReversal => {
                trace.corners.push(index_of[ev.index + 1]);
                SwitchKind::CornerReversal
            }
            EventKind::Cusp => SwitchKind::CuspReversal,
            EventKind::Slack => SwitchKind::StopSlack,
        };
        let index = match ev.kind {
            EventKind::CornerReversal => index_of[ev.index + 1],
            _ => index_of[ev.index],
        };
        trace.mode_switches.push(ModeSwitch {
            index,
            l_at: ev.l,
            kind,
        });
    }
    trace
}

/// Integrates and reconstructs in one go.
pub fn trace(curve: &dyn LeadingCurve, cfg: &IntegratorConfig) -> Result<Trace> {
    let path = integrate_nu(curve, cfg)?;
    Ok(reconstruct(curve, &path, cfg.leash))
}

/// Dense evaluation of a solved path between its samples.
#[derive(Debug, Clone)]
pub struct PathInterp<'a> {
    path: &'a NuPath,
    s: Vec<f64>,
}

impl<'a> PathInterp<'a> {
    pub fn new(path: &'a NuPath) -> Self {
        PathInterp {
            s: arc_transfer(&path.samples),
            path,
        }
    }

    pub fn total_arc(&self) -> f64 {
        *self.s.last().unwrap()
    }

    /// Interval index holding l (right-continuous across paired samples).
    fn interval(&self, l: f64) -> usize {
        let smp = &self.path.samples;
        let i = smp.partition_point(|x| x.l <= l);
        i.saturating_sub(1).min(smp.len().saturating_sub(2))
    }

    /// (nu, sigma) at leading arc l.
    pub fn nu_at(&self, l: f64) -> (f64, f64) {
        let smp = &self.path.samples;
        if smp.len() == 1 {
            return (smp[0].nu, smp[0].sigma);
        }
        let i = self.interval(l);
        let (a, b) = (&smp[i], &smp[i + 1]);
        if b.l <= a.l {
            return (b.nu, b.sigma);
        }
        (Hermite::between(a, b).eval(l), a.sigma)
    }

    pub fn s_at(&self, l: f64) -> f64 {
        let smp = &self.path.samples;
        if smp.len() == 1 {
            return 0.0;
        }
        let i = self.interval(l);
        let (a, b) = (&smp[i], &smp[i + 1]);
        if b.l <= a.l {
            return self.s[i + 1];
        }
        self.s[i] + Hermite::between(a, b).cos_integral(l)
    }

    /// Leading arc at which the tractrix has length `s`.
    pub fn l_at_s(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0 && s <= self.total_arc() * (1.0 + 1e-14)) {
            return Err(Error::OutOfDomain {
                s,
                limit: self.total_arc(),
            });
        }
        let i = self.s.partition_point(|&x| x < s).max(1) - 1;
        let smp = &self.path.samples;
        let j = (i + 1).min(smp.len() - 1);
        let (mut lo, mut hi) = (smp[i].l, smp[j].l);
        if hi <= lo {
            return Ok(lo);
        }
        // Newton on s(l) - s with ds/dl = cos(nu), safeguarded by bisection
        let mut l = lo
            + (hi - lo) * ((s - self.s[i]) / (self.s[j] - self.s[i]).max(1e-300)).clamp(0.0, 1.0);
        for _ in 0..100 {
            let f = self.s_at(l) - s;
            if f > 0.0 {
                hi = l;
            } else {
                lo = l;
            }
            let d = self.nu_at(l).0.cos();
            let next = l - f / d;
            let next = if d > 1e-12 && next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
            if (next - l).abs() <= 1e-15 * (1.0 + l.abs()) {
                return Ok(next);
            }
            l = next;
        }
        Ok(l)
    }

    /// Follower pose at leading arc l.
    pub fn pose_at(&self, curve: &dyn LeadingCurve, l: f64) -> Pose {
        let (nu, sigma) = self.nu_at(l);
        let a = curve.sample(l);
        let tau = a.theta - nu;
        Pose::new(
            a.point - Point2::polar(tau) * (sigma * self.path.leash),
            tau,
        )
    }

    /// Zeros of nu strictly inside the path: (l, s) of each inflection.
    pub fn inflections(&self) -> Vec<(f64, f64)> {
        let smp = &self.path.samples;
        let mut out = Vec::new();
        for i in 0..smp.len().saturating_sub(1) {
            let (a, b) = (&smp[i], &smp[i + 1]);
            if b.l <= a.l || a.nu == 0.0 || a.nu.signum() == b.nu.signum() {
                continue;
            }
            let herm = Hermite::between(a, b);
            let (mut lo, mut hi) = (a.l, b.l);
            let lo_sign = a.nu.signum();
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if herm.eval(mid).signum() == lo_sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * (1.0 + hi.abs()) {
                    break;
                }
            }
            let l = 0.5 * (lo + hi);
            out.push((l, self.s[i] + herm.cos_integral(l)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{self, LeashParams};
    use crate::curve::{ellipse, resample_polyline, CircleCurve};
    use crate::geometry::Pose;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn line_relaxes_to_trailing() {
        let line = CircleCurve::canonical(0.0);
        let cfg = IntegratorConfig::new(1.0, 20.0).with_nu0(-FRAC_PI_2 + 0.01);
        let path = integrate_nu(&line, &cfg).unwrap();
        for w in path.samples.windows(2) {
            assert!(w[1].nu > w[0].nu);
            assert!(w[1].nu < 0.0);
        }
        assert!(path.last().nu.abs() < 1e-6);
    }

    #[test]
    fn trivial_solution_is_constant() {
        let c = CircleCurve::canonical(0.2);
        let nu_star = (0.2f64 * 3.0).asin();
        let cfg = IntegratorConfig::new(3.0, 50.0).with_nu0(nu_star);
        let path = integrate_nu(&c, &cfg).unwrap();
        for s in &path.samples {
            assert_abs_diff_eq!(s.nu, nu_star, epsilon = 1e-14);
        }
        let tr = reconstruct(&c, &path, 3.0);
        let center = c.center().unwrap();
        for s in &tr.samples {
            assert_abs_diff_eq!(s.pose.position.distance(center), 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn matches_closed_form_angle() {
        let p = LeashParams::new(0.5, 1.0).unwrap();
        let c = p.leading_curve();
        let cfg = IntegratorConfig::new(1.0, 8.0).with_step(0.002);
        let path = integrate_nu(&c, &cfg).unwrap();
        let s = arc_transfer(&path.samples);
        for (smp, &s) in path.samples.iter().zip(&s).skip(1) {
            // sin nu = w - (1 + w) e^{-s/T}
            let expect = 0.5 - 1.5 * (-s).exp();
            assert_abs_diff_eq!(smp.nu.sin(), expect, epsilon = 1e-8);
            let l_cf = circle::leading_arc(s, &p).unwrap();
            assert_abs_diff_eq!(l_cf, smp.l, epsilon = 1e-8);
        }
    }

    #[test]
    fn arc_transfer_constant_angles() {
        let mk = |l: f64, nu: f64| NuSample {
            l,
            nu,
            theta: 0.0,
            sigma: 1.0,
            dnu_in: 0.0,
            dnu_out: 0.0,
        };
        let zero: Vec<_> = (0..11).map(|i| mk(i as f64 * 0.3, 0.0)).collect();
        let s = arc_transfer(&zero);
        assert_abs_diff_eq!(s[10], 3.0, epsilon = 1e-14);
        let c: Vec<_> = (0..11).map(|i| mk(i as f64 * 0.3, 0.4)).collect();
        assert_abs_diff_eq!(arc_transfer(&c)[10], 3.0 * 0.4f64.cos(), epsilon = 1e-14);
    }

    #[test]
    fn corner_jumps() {
        assert_eq!(
            corner_jump(0.0, FRAC_PI_2, Mode::PullOnly).unwrap(),
            CornerOutcome::Stop(FRAC_PI_2)
        );
        match corner_jump(-0.3, 0.2, Mode::PullOnly).unwrap() {
            CornerOutcome::Continue(v) => assert_abs_diff_eq!(v, -0.1, epsilon = 1e-15),
            other => panic!("{other:?}"),
        }
        match corner_jump(1.0, 1.0, Mode::PushPull).unwrap() {
            CornerOutcome::Reversed(v) => assert_abs_diff_eq!(v, 2.0 - PI, epsilon = 1e-15),
            other => panic!("{other:?}"),
        }
        assert!(corner_jump(0.0, PI, Mode::PullOnly).is_err());
        assert!(corner_jump(0.0, -3.5, Mode::PushPull).is_err());
    }

    #[test]
    fn square_keeps_leash_across_corners() {
        let sq = resample_polyline(
            &[
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(1.0, 1.0),
                Point2::new(0.0, 1.0),
            ],
            true,
        )
        .unwrap();
        // pulled: the leash survives the first corner and goes slack at the second
        let pulled = trace(&sq, &IntegratorConfig::new(0.3, 8.0).with_step(0.001)).unwrap();
        assert_eq!(pulled.corners.len(), 1);
        assert!(matches!(pulled.termination, Termination::Stopped { .. }));
        assert_abs_diff_eq!(pulled.last().unwrap().l, 2.0);
        let cfg = IntegratorConfig::new(0.3, 8.0)
            .with_step(0.001)
            .with_mode(Mode::PushPull);
        let tr = trace(&sq, &cfg).unwrap();
        assert_eq!(tr.corners.len(), 8);
        assert_eq!(tr.termination, Termination::ReachedLength);
        for t in [&pulled, &tr] {
            for s in &t.samples {
                let a = sq.sample(s.l).point;
                assert_abs_diff_eq!(a.distance(s.pose.position), 0.3, epsilon = 1e-12);
            }
            for w in t.samples.windows(2) {
                assert!(w[1].l > w[0].l && w[1].s > w[0].s);
            }
        }
    }

    #[test]
    fn sharp_corner_stops_pull_mode() {
        let p = resample_polyline(
            &[
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 0.1),
            ],
            false,
        )
        .unwrap();
        let cfg = IntegratorConfig::new(0.5, 5.0).with_nu0(0.0);
        let tr = trace(&p, &cfg).unwrap();
        assert!(matches!(tr.termination, Termination::Stopped { .. }));
        assert_eq!(tr.mode_switches.last().unwrap().kind, SwitchKind::StopSlack);
        assert_abs_diff_eq!(tr.last().unwrap().l, 1.0);
        let pp = trace(&p, &cfg.with_mode(Mode::PushPull)).unwrap();
        assert_eq!(pp.mode_switches[0].kind, SwitchKind::CornerReversal);
        assert_eq!(pp.termination, Termination::ReachedLength);
        for s in &pp.samples {
            assert_abs_diff_eq!(
                p.sample(s.l).point.distance(s.pose.position),
                0.5,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn long_leash_stops_at_finite_length() {
        let p = LeashParams::new(3.0, 1.0).unwrap();
        let c = p.leading_curve();
        let tr = trace(&c, &IntegratorConfig::new(1.0, 10.0)).unwrap();
        let s1 = circle::arc_limit(&p).unwrap();
        assert_eq!(tr.termination, Termination::Stopped { nu: FRAC_PI_2 });
        assert_abs_diff_eq!(tr.last().unwrap().s, s1, epsilon = 1e-8);
        assert_eq!(tr.last().unwrap().curvature, f64::INFINITY);
    }

    #[test]
    fn push_pull_continues_through_cusp() {
        let p = LeashParams::new(3.0, 1.0).unwrap();
        let c = p.leading_curve();
        let cfg = IntegratorConfig::new(1.0, 3.0).with_mode(Mode::PushPull);
        let tr = trace(&c, &cfg).unwrap();
        let cusps: Vec<_> = tr
            .mode_switches
            .iter()
            .filter(|m| m.kind == SwitchKind::CuspReversal)
            .collect();
        assert!(!cusps.is_empty());
        let first = cusps[0];
        assert_eq!(tr.samples[first.index].curvature.abs(), f64::INFINITY);
        for s in &tr.samples {
            assert_abs_diff_eq!(
                c.sample(s.l).point.distance(s.pose.position),
                1.0,
                epsilon = 1e-12
            );
        }
        // tangent turns by pi at the cusp
        let before = tr.samples[first.index].pose.tangent_angle;
        let after = tr.samples[first.index + 1].pose.tangent_angle;
        let turn = crate::geometry::wrap_angle(after - before).abs();
        assert!((turn - PI).abs() < 0.1, "turn {turn}");
    }

    #[test]
    fn push_regime_matches_reverse_closed_form() {
        // negative leash, circle of curvature w/T = 3
        let rev = LeashParams::new(-3.0, -1.0).unwrap();
        let c = rev.leading_curve();
        let cfg = IntegratorConfig::new(-1.0, 10.0).with_step(0.001);
        let path = integrate_nu(&c, &cfg).unwrap();
        let it = PathInterp::new(&path);
        let s1 = circle::arc_limit(&rev).unwrap();
        assert_abs_diff_eq!(it.total_arc(), s1, epsilon = 1e-8);
        for k in 1..20 {
            let s = s1 * k as f64 / 20.0;
            let l = it.l_at_s(s).unwrap();
            let b = it.pose_at(&c, l).position;
            let cf = circle::position(s, &rev).unwrap();
            assert!(b.distance(cf) < 1e-8, "s={s}");
        }
    }

    #[test]
    fn fourth_order() {
        let p = LeashParams::new(0.5, 1.0).unwrap();
        let c = p.leading_curve();
        let err = |h: f64| {
            let path = integrate_nu(
                &c,
                &IntegratorConfig::new(1.0, 6.0)
                    .with_step(h)
                    .with_refine(1.0),
            )
            .unwrap();
            path.samples
                .iter()
                .map(|s| (s.nu - circle::nu_of_leading_arc(s.l, &p).unwrap()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(0.04) / err(0.02);
        assert!(ratio > 14.0, "ratio {ratio}");
    }

    #[test]
    fn adaptive_mode_meets_tolerance() {
        let p = LeashParams::new(0.5, 1.0).unwrap();
        let c = p.leading_curve();
        let cfg = IntegratorConfig::new(1.0, 10.0)
            .with_step(0.2)
            .with_tolerance(1e-11);
        let path = integrate_nu(&c, &cfg).unwrap();
        let worst = path
            .samples
            .iter()
            .map(|s| (s.nu - circle::nu_of_leading_arc(s.l, &p).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-8, "{worst}");
    }

    #[test]
    fn inflection_of_circle_tractrix() {
        let p = LeashParams::new(2.0, 1.0).unwrap();
        let c = p.leading_curve();
        let path = integrate_nu(&c, &IntegratorConfig::new(1.0, 10.0)).unwrap();
        let infl = PathInterp::new(&path).inflections();
        assert_eq!(infl.len(), 1);
        assert_abs_diff_eq!(infl[0].1, circle::inflection(&p).unwrap(), epsilon = 1e-8);
    }

    #[test]
    fn rejects_bad_config() {
        let c = CircleCurve::canonical(1.0);
        assert!(integrate_nu(&c, &IntegratorConfig::new(0.0, 1.0)).is_err());
        assert!(integrate_nu(&c, &IntegratorConfig::new(1.0, 1.0).with_nu0(2.0)).is_err());
        assert!(integrate_nu(&c, &IntegratorConfig::new(1.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn physical_angle_round_trip() {
        for a in [-3.0, -1.0, 0.0, 1.5, 2.0, PI] {
            let (nu, sg) = split_physical(a);
            assert!(nu.abs() <= FRAC_PI_2);
            assert_abs_diff_eq!(
                physical_angle(nu, sg),
                crate::geometry::wrap_angle(a),
                epsilon = 1e-15
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn pull_mode_confinement_and_contraction(
            a in -1.5f64..1.5, b in -1.5f64..1.5, which in 0usize..3, leash in 0.2f64..0.45
        ) {
            prop_assume!((a - b).abs() > 1e-3);
            let curve: Box<dyn LeadingCurve> = match which {
                0 => Box::new(CircleCurve::line(Pose::new(Point2::ORIGIN, 0.3))),
                1 => Box::new(CircleCurve::canonical(1.0)),
                _ => Box::new(ellipse(2.0, 1.0).unwrap()),
            };
            // |q T| < 1 everywhere for these leashes (max curvature 2)
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let cfg = IntegratorConfig::new(leash, 3.0).with_step(0.005).with_refine(1.0);
            let p1 = integrate_nu(&curve, &cfg.with_nu0(lo)).unwrap();
            let p2 = integrate_nu(&curve, &cfg.with_nu0(hi)).unwrap();
            prop_assert_eq!(p1.samples.len(), p2.samples.len());
            let mut prev = f64::INFINITY;
            for (x, y) in p1.samples.iter().zip(&p2.samples).skip(1) {
                prop_assert!(x.nu.abs() < FRAC_PI_2 && y.nu.abs() < FRAC_PI_2);
                let gap = y.nu - x.nu;
                prop_assert!(gap > 0.0);
                prop_assert!(gap < prev);
                prev = gap;
            }
        }
    }
}
