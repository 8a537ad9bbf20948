//! Verification suites with a machine-readable report. `TRACTRIX_TOL`
//! replaces every tolerance when set.

use std::f64::consts::PI;

use serde_json::{json, Value};
use tractrix_core::circle::errata::{loria_jump_point, loria_polar_erroneous};
use tractrix_core::circle::{
    self, arc_limit, spiral_polar_explicit, trace_polar, trivial_tractrix, uniform_grid,
    TrivialTractrix,
};
use tractrix_core::curve::{ellipse, CircleCurve};
use tractrix_core::inversion::{
    pencil_asymptotic_circle, pencil_foci, verify_orthogonality, verify_t1_reverse_duality,
    verify_t2_involute, verify_t3_t5_duality, PencilMember,
};
use tractrix_core::ode::{self, IntegratorConfig};
use tractrix_core::periodic::{closure_mismatch, contraction_bound};
use tractrix_core::{find_periodic, LeashParams, PeriodicConfig, Point2};

use crate::output::num;
use crate::CliError;

pub const SUITES: [&str; 6] = ["oracle", "errata", "pencil", "inversion", "periodic", "all"];
pub const TOL_VAR: &str = "TRACTRIX_TOL";

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: String,
    pub tolerance_override: Option<f64>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "suite": c.suite,
                    "name": c.name,
                    "residual": num(c.residual),
                    "tolerance": num(c.tolerance),
                    "pass": c.pass(),
                })
            })
            .collect();
        json!({
            "suite": self.suite,
            "tolerance_override": self.tolerance_override.map(num),
            "pass": self.pass(),
            "checks": checks,
        })
    }
}

/// Reads the tolerance override from the environment.
pub fn tolerance_override() -> Result<Option<f64>, CliError> {
    match std::env::var(TOL_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(Some(t)),
            _ => Err(CliError::Usage(format!(
                "{TOL_VAR} must be a positive number, got `{v}`"
            ))),
        },
    }
}

struct Collector {
    suite: &'static str,
    tol: Option<f64>,
    checks: Vec<Check>,
}

impl Collector {
    fn add(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        // NaN residuals must fail, so they are reported as infinite
        let residual = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            residual,
            tolerance: self.tol.unwrap_or(tolerance),
        });
    }
}

pub fn run(suite: &str, tol: Option<f64>) -> Result<Report, CliError> {
    let names: Vec<&'static str> = match suite {
        "all" => SUITES[..5].to_vec(),
        s => match SUITES.iter().find(|n| **n == s && s != "all") {
            Some(n) => vec![*n],
            None => {
                return Err(CliError::Usage(format!(
                    "unknown suite `{suite}` (expected one of {})",
                    SUITES.join(", ")
                )))
            }
        },
    };
    let mut checks = Vec::new();
    for name in names {
        let mut c = Collector {
            suite: name,
            tol,
            checks: Vec::new(),
        };
        match name {
            "oracle" => oracle(&mut c)?,
            "errata" => errata(&mut c)?,
            "pencil" => pencil(&mut c)?,
            "inversion" => inversion(&mut c)?,
            _ => periodic(&mut c)?,
        }
        checks.extend(c.checks);
    }
    Ok(Report {
        suite: suite.to_string(),
        tolerance_override: tol,
        checks,
    })
}

/// Closed form against the ODE engine, per class.
fn oracle(c: &mut Collector) -> Result<(), CliError> {
    for (w, t) in [(3.0, 1.0), (1.0, 1.0), (0.5, 1.0), (0.0, 1.0), (-0.5, 1.0)] {
        let p = LeashParams::new(w, t)?;
        let class = circle::classify(w, t)?;
        let hi = arc_limit(&p).map_or(10.0, |s1| (s1 - 0.01).min(10.0));
        let l_max = match arc_limit(&p) {
            Some(_) => 100.0,
            None => circle::leading_arc(hi, &p)? + 0.01,
        };
        let tr = ode::trace(&p.leading_curve(), &IntegratorConfig::new(t, l_max))?;
        let mut worst: f64 = 0.0;
        for smp in tr.samples.iter().filter(|s| s.s >= 0.01 && s.s <= hi) {
            worst = worst.max(circle::position(smp.s, &p)?.distance(smp.pose.position));
        }
        c.add(
            format!("{class} w={w} T={t}: closed form vs ODE"),
            worst,
            1e-6,
        );
    }
    Ok(())
}

fn errata(c: &mut Collector) -> Result<(), CliError> {
    let (a, l) = (1.0, 2.0);
    let t0 = loria_jump_point(a, l);
    let eps = 1e-7;
    let jump = loria_polar_erroneous(t0 - eps, a, l)? - loria_polar_erroneous(t0 + eps, a, l)?;
    c.add(
        format!("published a<l form jumps by pi at t0={t0:.6}"),
        (jump.abs() - PI).abs(),
        1e-3,
    );
    let p = LeashParams::new(l / a, l)?;
    let pts = trace_polar(&p, &[t0 - eps, t0 + eps])?;
    c.add(
        "corrected polar angle is continuous at t0",
        (pts[1].phi - pts[0].phi).abs(),
        1e-6,
    );

    // the corrected explicit polar tractrix against the parametric trace
    let t = 1.0;
    let p = LeashParams::new(1.0, t)?;
    let pole = Point2::new(-t, 0.0);
    let mut worst: f64 = 0.0;
    for s in uniform_grid(0.01, 12.0, 400) {
        let d = circle::position(s, &p)? - pole;
        let x = (spiral_polar_explicit(d.norm(), t)? - d.angle()).rem_euclid(2.0 * PI);
        worst = worst.max(x.min(2.0 * PI - x));
    }
    c.add(
        "arccos polar tractrix matches the parametric trace",
        worst,
        1e-8,
    );
    Ok(())
}

fn pencil(c: &mut Collector) -> Result<(), CliError> {
    let t = 1.0;
    let [f0, f1] = pencil_foci(t);
    for w in [-0.8, -0.4, 0.0, 0.4, 0.8] {
        let m = pencil_asymptotic_circle(w, t)?;
        let residual = m
            .boundary_points(360, t)
            .iter()
            .map(|q| (w * (q.x * q.x + q.y * q.y + t * t) + 2.0 * t * q.x).abs())
            .fold(0.0, f64::max);
        c.add(
            format!("w={w}: asymptotic line satisfies the pencil equation"),
            residual,
            1e-10,
        );
        // the limit circle of the tractrix itself, from its leading circle
        let lim = trivial_tractrix(&LeashParams::new(w, t)?)?;
        let geom = match (m, lim) {
            (
                PencilMember::Circle { center, radius, .. },
                TrivialTractrix::Circle {
                    center: c2,
                    radius: r2,
                    ..
                },
            ) => center.distance(c2) + (radius - r2).abs(),
            (PencilMember::Line { .. }, TrivialTractrix::Line { through, direction }) => {
                through.x.abs() + direction.cos().abs()
            }
            _ => f64::INFINITY,
        };
        c.add(
            format!("w={w}: member equals the limit circle"),
            geom,
            1e-10,
        );
        if let PencilMember::Circle { center, radius, .. } = m {
            let prod = (f0.x - center.x) * (f1.x - center.x);
            c.add(
                format!("w={w}: foci are inverse points"),
                (prod - radius * radius).abs(),
                1e-10,
            );
        }
    }
    c.add(
        "foci at (-T, 0) and (T, 0)",
        f0.distance(Point2::new(-t, 0.0)) + f1.distance(Point2::new(t, 0.0)),
        1e-10,
    );
    Ok(())
}

fn inversion(c: &mut Collector) -> Result<(), CliError> {
    c.add(
        "T3 image lies on T5 (w=0.5, T=1)",
        verify_t3_t5_duality(1.0, 0.5, 200)?,
        1e-6,
    );
    c.add(
        "T1 image lies on the reverse tractrix (w=2, T=1)",
        verify_t1_reverse_duality(1.0, 2.0, 200)?,
        1e-6,
    );
    c.add(
        "T2 image lies on the circle involute (T=1)",
        verify_t2_involute(1.0, 200)?,
        1e-6,
    );
    for w in [2.0, 1.0, 0.5, 0.0, -0.5] {
        let p = LeashParams::new(w, 1.0)?;
        let end = arc_limit(&p).map_or(8.0, |s1| s1 * 0.999);
        let tr = circle::trace_cartesian(&p, &uniform_grid(1e-3, end, 400))?;
        c.add(
            format!("w={w}: orthogonal to the circles of radius T"),
            verify_orthogonality(&p.leading_curve(), &tr, 400)?,
            1e-9,
        );
    }
    Ok(())
}

fn periodic(c: &mut Collector) -> Result<(), CliError> {
    let lead = CircleCurve::canonical(0.5);
    let sol = find_periodic(&lead, 1.0, &PeriodicConfig::default())?;
    c.add(
        "circle R=2, T=1: nu* = pi/6",
        (sol.nu_star - PI / 6.0).abs(),
        1e-10,
    );
    let center = lead.center().unwrap_or(Point2::ORIGIN);
    let err_r = sol
        .trace_one_period
        .points()
        .map(|b| (b.distance(center) - 3f64.sqrt()).abs())
        .fold(0.0, f64::max);
    c.add("circle R=2, T=1: trace on radius sqrt(3)", err_r, 1e-8);
    for (a, b, frac) in [(2.0, 1.0, 0.5), (1.5, 1.2, 0.9)] {
        let curve = ellipse(a, b)?;
        let leash = frac * contraction_bound(&curve);
        let sol = find_periodic(&curve, leash, &PeriodicConfig::default())?;
        c.add(
            format!("ellipse {a}x{b}, T={leash:.4}: fixed-point residual"),
            sol.residual,
            1e-10,
        );
        let (dp, da) = closure_mismatch(&curve, &sol)?;
        c.add(
            format!("ellipse {a}x{b}, T={leash:.4}: one period closes"),
            dp.max(da),
            1e-8,
        );
    }
    Ok(())
}
