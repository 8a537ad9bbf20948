//! Periodic tractrices of periodic leading curves as fixed points of the
//! period map nu(0) -> nu(L).
//!
//! When |q(l)| T < 1 everywhere the map sends [-pi/2, pi/2] into itself and
//! contracts, so plain iteration converges. Beyond that bound the solver can
//! still be asked to try (push-pull continuation enabled); it then reports
//! whatever fixed point the iteration reaches.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::curve::{LeadingCurve, Period};
use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, Point2, Termination, Trace};
use crate::ode::{self, split_physical, IntegratorConfig, Mode};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicConfig {
    pub tol: f64,
    pub max_iterations: usize,
    /// Run even when the curvature bound |q| T < 1 fails.
    pub allow_beyond_bound: bool,
    /// Integration step; `None` uses the engine default.
    pub step: Option<f64>,
    /// Starting angle of the iteration.
    pub nu0: f64,
}

impl Default for PeriodicConfig {
    fn default() -> Self {
        PeriodicConfig {
            tol: 1e-10,
            max_iterations: 200,
            allow_beyond_bound: false,
            step: None,
            nu0: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSolution {
    /// Leash angle of the periodic orbit at l = 0 (a physical angle in
    /// (-pi, pi]; beyond pi/2 only when push regimes are involved).
    pub nu_star: f64,
    /// |map(nu_star) - nu_star|
    pub residual: f64,
    pub iterations: usize,
    /// |map(nu_n) - nu_n| for every iteration.
    pub residuals: Vec<f64>,
    pub trace_one_period: Trace,
    /// The curvature bound was violated; the theorem does not apply.
    pub beyond_bound: bool,
}

/// Largest leash length for which the period map is guaranteed to contract:
/// 1 / max |q|. Zero for curves with corners.
pub fn contraction_bound(curve: &dyn LeadingCurve) -> f64 {
    if curve.has_corners() {
        return 0.0;
    }
    let q = curve.max_abs_curvature();
    if q == 0.0 {
        f64::INFINITY
    } else {
        1.0 / q
    }
}

/// The map nu(0) -> nu(L) over one period of a leading curve.
pub struct PeriodMap<'a> {
    curve: &'a dyn LeadingCurve,
    period: Period,
    leash: f64,
    mode: Mode,
    step: Option<f64>,
}

impl<'a> PeriodMap<'a> {
    /// Pull-mode map; fails for curves without a period.
    pub fn new(curve: &'a dyn LeadingCurve, leash: f64) -> Result<Self> {
        let period = curve.period().ok_or(Error::NotPeriodic)?;
        if !(leash > 0.0 && leash.is_finite()) {
            return Err(Error::OutOfRange {
                what: "leash length",
                value: leash,
            });
        }
        Ok(PeriodMap {
            curve,
            period,
            leash,
            mode: Mode::PullOnly,
            step: None,
        })
    }

    /// Uses an artificial period for a curve that has none (a line, say).
    pub fn with_period(curve: &'a dyn LeadingCurve, leash: f64, length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::OutOfRange {
                what: "period",
                value: length,
            });
        }
        if !(leash > 0.0 && leash.is_finite()) {
            return Err(Error::OutOfRange {
                what: "leash length",
                value: leash,
            });
        }
        let s0 = curve.sample(0.0);
        let s1 = curve.sample(length);
        Ok(PeriodMap {
            curve,
            period: Period {
                length,
                shift: s1.point - s0.point,
                turn: s1.theta - s0.theta,
            },
            leash,
            mode: Mode::PullOnly,
            step: None,
        })
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_step(mut self, step: Option<f64>) -> Self {
        self.step = step;
        self
    }

    pub fn period(&self) -> Period {
        self.period
    }

    fn config(&self, nu0: f64) -> IntegratorConfig {
        let (nu, sigma) = split_physical(nu0);
        let mut cfg = IntegratorConfig::new(sigma * self.leash, self.period.length)
            .with_nu0(nu)
            .with_mode(self.mode);
        cfg.step = self.step;
        cfg
    }

    /// Physical leash angle after one period.
    pub fn apply(&self, nu0: f64) -> Result<f64> {
        let path = ode::integrate_nu(self.curve, &self.config(nu0))?;
        if let Termination::Stopped { .. } = path.termination {
            return Err(Error::Slack { l: path.last().l });
        }
        Ok(path.final_physical_angle())
    }

    /// The traced curve over one period from `nu0`.
    pub fn trace(&self, nu0: f64) -> Result<Trace> {
        let cfg = self.config(nu0);
        let mut tr = ode::trace(self.curve, &cfg)?;
        if let Termination::Stopped { .. } = tr.termination {
            return Err(Error::Slack {
                l: tr.last().map_or(0.0, |s| s.l),
            });
        }
        tr.termination = Termination::Closed;
        Ok(tr)
    }
}

/// nu(L) for a pull-mode start at `nu0`.
pub fn period_map(curve: &dyn LeadingCurve, leash: f64, nu0: f64) -> Result<f64> {
    PeriodMap::new(curve, leash)?.apply(nu0)
}

/// Fixed point of the period map by plain iteration.
pub fn find_periodic(
    curve: &dyn LeadingCurve,
    leash: f64,
    cfg: &PeriodicConfig,
) -> Result<PeriodicSolution> {
    let bound = contraction_bound(curve);
    let beyond = !(leash < bound);
    if beyond && !cfg.allow_beyond_bound {
        return Err(Error::ContractionBound { leash, bound });
    }
    let mut map = PeriodMap::new(curve, leash)?.with_step(cfg.step);
    if beyond {
        log::warn!(
            "leash {leash} is not below the contraction bound {bound}; \
             convergence and uniqueness are not guaranteed"
        );
        map = map.with_mode(Mode::PushPull);
    }
    let mut nu = wrap_angle(cfg.nu0);
    let mut residuals = Vec::new();
    for _ in 0..cfg.max_iterations {
        let next = map.apply(nu)?;
        let r = wrap_angle(next - nu).abs();
        residuals.push(r);
        nu = next;
        if r <= cfg.tol {
            let trace = map.trace(nu)?;
            let residual = wrap_angle(map.apply(nu)? - nu).abs();
            return Ok(PeriodicSolution {
                nu_star: nu,
                residual,
                iterations: residuals.len(),
                residuals,
                trace_one_period: trace,
                beyond_bound: beyond,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iterations,
        residual: residuals.last().copied().unwrap_or(f64::NAN),
    })
}

/// Measured secant contraction |map(b) - map(a)| / |b - a| over the pair
/// (-pi/2 + eps, pi/2 - eps).
pub fn contraction_rate(curve: &dyn LeadingCurve, leash: f64) -> Result<f64> {
    let map = PeriodMap::new(curve, leash)?;
    let eps = 1e-6;
    let a = -std::f64::consts::FRAC_PI_2 + eps;
    let b = -a;
    Ok((map.apply(b)? - map.apply(a)?).abs() / (b - a))
}

/// Gap between two pull-mode solutions sampled on a common fixed-step grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GapProfile {
    pub l: Vec<f64>,
    /// nu2(l) - nu1(l)
    pub gap: Vec<f64>,
    /// cos of the mean angle (nu1 + nu2)/2 along the orbit.
    pub mean_cos: Vec<f64>,
}

/// Integrates the lower solution together with the gap itself,
/// delta' = -2 cos(nu1 + delta/2) sin(delta/2) / T, so the gap keeps full
/// relative precision long after nu2 - nu1 would have cancelled to zero.
/// Needs a smooth periodic curve and nu1 < nu2 within [-pi/2, pi/2].
pub fn gap_profile(
    curve: &dyn LeadingCurve,
    leash: f64,
    nu1: f64,
    nu2: f64,
    step: f64,
) -> Result<GapProfile> {
    let period = curve.period().ok_or(Error::NotPeriodic)?;
    if curve.has_corners() {
        return Err(Error::Invalid(
            "gap profile needs a smooth leading curve".into(),
        ));
    }
    if !(leash > 0.0 && step > 0.0) {
        return Err(Error::OutOfRange {
            what: "leash or step",
            value: leash.min(step),
        });
    }
    if !(-FRAC_PI_2 <= nu1 && nu1 < nu2 && nu2 <= FRAC_PI_2) {
        return Err(Error::Invalid(format!(
            "need -pi/2 <= nu1 < nu2 <= pi/2, got {nu1}, {nu2}"
        )));
    }
    let n = (period.length / step).ceil().max(1.0) as usize;
    let h = period.length / n as f64;
    let f = |l: f64, nu: f64, d: f64| {
        let q = curve.sample(l).curvature;
        let half = 0.5 * d;
        (
            q - nu.sin() / leash,
            -2.0 * (nu + half).cos() * half.sin() / leash,
        )
    };
    let mut out = GapProfile {
        l: Vec::with_capacity(n + 1),
        gap: Vec::with_capacity(n + 1),
        mean_cos: Vec::with_capacity(n + 1),
    };
    let (mut nu, mut d) = (nu1, nu2 - nu1);
    for i in 0..=n {
        let l = i as f64 * h;
        out.l.push(l);
        out.gap.push(d);
        out.mean_cos.push((nu + 0.5 * d).cos());
        if i == n {
            break;
        }
        let (a1, b1) = f(l, nu, d);
        let (a2, b2) = f(l + 0.5 * h, nu + 0.5 * h * a1, d + 0.5 * h * b1);
        let (a3, b3) = f(l + 0.5 * h, nu + 0.5 * h * a2, d + 0.5 * h * b2);
        let (a4, b4) = f(l + h, nu + h * a3, d + h * b3);
        nu += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        d += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    }
    Ok(out)
}

/// Contraction of a pair of solutions against the bound from the exact
/// relation d/dl ln tan(delta/4) = -cos(mean nu)/T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GronwallCheck {
    /// delta(L) / delta(0)
    pub measured: f64,
    /// 4 atan(tan(delta0/4) e^{-cL/T}) / delta0
    pub bound: f64,
    /// min cos of the mean angle along the orbit.
    pub c: f64,
    /// e^{-cL/T}, the linearized rate.
    pub linear: f64,
}

pub fn gronwall_check(
    curve: &dyn LeadingCurve,
    leash: f64,
    nu1: f64,
    nu2: f64,
    step: f64,
) -> Result<GronwallCheck> {
    let g = gap_profile(curve, leash, nu1, nu2, step)?;
    let length = *g.l.last().unwrap();
    let c = g.mean_cos.iter().copied().fold(f64::INFINITY, f64::min);
    let d0 = g.gap[0];
    let e = (-c * length / leash).exp();
    Ok(GronwallCheck {
        measured: g.gap.last().unwrap() / d0,
        bound: 4.0 * ((0.25 * d0).tan() * e).atan() / d0,
        c,
        linear: e,
    })
}

/// Periodic solutions for several leash lengths, solved in parallel.
pub fn sweep(
    curve: &dyn LeadingCurve,
    leashes: &[f64],
    cfg: &PeriodicConfig,
) -> Vec<Result<PeriodicSolution>> {
    leashes
        .par_iter()
        .map(|&t| find_periodic(curve, t, cfg))
        .collect()
}

/// Distance between the end of a one-period trace and its start carried over
/// by the period translation, plus the tangent mismatch (radians).
pub fn closure_mismatch(curve: &dyn LeadingCurve, sol: &PeriodicSolution) -> Result<(f64, f64)> {
    let period = curve.period().ok_or(Error::NotPeriodic)?;
    let tr = &sol.trace_one_period;
    let (first, last) = match (tr.first(), tr.last()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::TooFewPoints),
    };
    let expect: Point2 = first.pose.position + period.shift;
    let dpos = last.pose.position.distance(expect);
    let dang = wrap_angle(last.pose.tangent_angle - first.pose.tangent_angle - period.turn).abs();
    Ok((dpos, dang))
}
