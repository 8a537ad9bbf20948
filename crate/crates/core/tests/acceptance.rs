//! Acceptance checks, one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use tractrix_core::circle::errata::{loria_jump_point, loria_polar_erroneous};
use tractrix_core::circle::{
    self, arc_limit, inflection, natural_curvature, reverse_identity_check, s_of_t,
    spiral_polar_explicit, trace_polar, uniform_grid, LeashParams,
};
use tractrix_core::curve::{archimedean_spiral, ellipse, CircleCurve, LeadingCurve};
use tractrix_core::inversion::{
    pencil_asymptotic_circle, pencil_foci, verify_t1_reverse_duality, verify_t3_t5_duality,
    PencilMember,
};
use tractrix_core::ode::{self, integrate_nu, IntegratorConfig, Mode, PathInterp};
use tractrix_core::periodic::{
    closure_mismatch, contraction_bound, contraction_rate, find_periodic, gap_profile, PeriodMap,
    PeriodicConfig,
};
use tractrix_core::{Point2, SwitchKind, Termination};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

const ORACLE_CASES: [(f64, f64); 5] = [(3.0, 1.0), (1.0, 1.0), (0.5, 1.0), (0.0, 1.0), (-0.5, 1.0)];
const FINE_STEP: f64 = 1e-3;

/// End of the comparison window: min(S1 - 0.01, 10).
fn s_window(p: &LeashParams) -> f64 {
    arc_limit(p).map_or(10.0, |s1| (s1 - 0.01).min(10.0))
}

fn oracle_path(p: &LeashParams) -> Result<ode::NuPath, String> {
    let lead = p.leading_curve();
    let l_max = match arc_limit(p) {
        Some(_) => 100.0,
        None => circle::leading_arc(10.0, p).map_err(e)? + 0.01,
    };
    let cfg = IntegratorConfig::new(p.leash, l_max).with_step(FINE_STEP);
    integrate_nu(&lead, &cfg).map_err(e)
}

fn oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for (w, t) in ORACLE_CASES {
        let p = LeashParams::new(w, t).map_err(e)?;
        let lead = p.leading_curve();
        let path = oracle_path(&p)?;
        let tr = ode::reconstruct(&lead, &path, p.leash);
        let hi = s_window(&p);
        for smp in tr.samples.iter().filter(|s| s.s >= 0.01 && s.s <= hi) {
            let cf = circle::position(smp.s, &p).map_err(e)?;
            worst = worst.max(cf.distance(smp.pose.position));
        }
        // random arc lengths through the interpolated path
        let interp = PathInterp::new(&path);
        let mut runner = TestRunner::new(Config {
            cases: 64,
            failure_persistence: None,
            ..Config::default()
        });
        let local = Cell::new(0.0f64);
        let res = runner.run(&(0.01..hi), |s| {
            let l = interp
                .l_at_s(s)
                .map_err(|x| TestCaseError::fail(x.to_string()))?;
            let b = interp.pose_at(&lead, l).position;
            let cf = circle::position(s, &p).map_err(|x| TestCaseError::fail(x.to_string()))?;
            let d = b.distance(cf);
            local.set(local.get().max(d));
            prop_assert!(d <= 1e-6, "w={} s={} deviation {:e}", w, s, d);
            Ok(())
        });
        worst = worst.max(local.get());
        res.map_err(|x| x.to_string())?;
    }
    check(
        worst <= 1e-6,
        format!("max deviation {worst:.2e} (limit 1e-6)"),
    )
}

fn natural_equation_consistency() -> Outcome {
    let mut worst: f64 = 0.0;
    for (w, t) in ORACLE_CASES {
        let p = LeashParams::new(w, t).map_err(e)?;
        let path = oracle_path(&p)?;
        let s = ode::arc_transfer(&path.samples);
        let hi = s_window(&p);
        for (smp, &s) in path.samples.iter().zip(&s) {
            if s < 0.01 || s > hi {
                continue;
            }
            let k = smp.nu.tan() / p.leash;
            let k_cf = natural_curvature(s, &p).map_err(e)?;
            worst = worst.max((k - k_cf).abs());
        }
    }
    check(
        worst <= 1e-8,
        format!("max |k_ode - k| {worst:.2e} (limit 1e-8)"),
    )
}

fn inflection_point() -> Outcome {
    let mut worst: f64 = 0.0;
    for w in [0.5, 1.0, 2.0, 5.0] {
        let t = 1.0;
        let p = LeashParams::new(w, t).map_err(e)?;
        let lead = p.leading_curve();
        let path = integrate_nu(&lead, &IntegratorConfig::new(t, 20.0)).map_err(e)?;
        let infl = PathInterp::new(&path).inflections();
        let expect = t * ((w + 1.0) / w).ln();
        let Some(&(_, s)) = infl.first() else {
            return Err(format!("w={w}: no sign change of curvature"));
        };
        if infl.len() != 1 {
            return Err(format!("w={w}: {} inflections", infl.len()));
        }
        let cf = inflection(&p).ok_or("no closed-form inflection")?;
        if (cf - expect).abs() > 1e-14 {
            return Err(format!("w={w}: closed form {cf} vs {expect}"));
        }
        worst = worst.max((s - expect).abs());
    }
    check(
        worst <= 1e-8,
        format!("max |s_infl - s0| {worst:.2e} (limit 1e-8)"),
    )
}

fn finite_length() -> Outcome {
    let mut worst: f64 = 0.0;
    for w in [1.5f64, 2.0, 3.0] {
        let t = 1.0;
        let p = LeashParams::new(w, t).map_err(e)?;
        let tr = ode::trace(&p.leading_curve(), &IntegratorConfig::new(t, 50.0)).map_err(e)?;
        if !matches!(tr.termination, Termination::Stopped { .. }) {
            return Err(format!("w={w}: trace did not stop ({:?})", tr.termination));
        }
        let s1 = t * ((w + 1.0) / (w - 1.0)).ln();
        worst = worst.max((tr.last().unwrap().s - s1).abs());
    }
    check(
        worst <= 1e-8,
        format!("max |s_end - S1| {worst:.2e} (limit 1e-8)"),
    )
}

fn reversal_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for w in [1.5f64, 2.0, 3.0] {
        let t = 1.0;
        let s1 = t * ((w + 1.0) / (w - 1.0)).ln();
        // endpoints excluded: both sides are infinite there
        let grid = uniform_grid(1e-3 * s1, (1.0 - 1e-3) * s1, 2001);
        worst = worst.max(reverse_identity_check(w, t, &grid).map_err(e)?);
    }
    check(
        worst <= 1e-10,
        format!("max deviation {worst:.2e} (limit 1e-10)"),
    )
}

fn polar_consistency() -> Outcome {
    let mut worst: f64 = 0.0;
    for w in [2.0, 1.0, 0.5, -0.5] {
        let p = LeashParams::new(w, 1.0).map_err(e)?;
        let t_hi = if w < 1.0 {
            0.999 * ((1.0 + w) / (1.0 - w)).sqrt()
        } else {
            20.0
        };
        let ts = uniform_grid(0.0, t_hi, 400);
        for (pt, &t) in trace_polar(&p, &ts).map_err(e)?.iter().zip(&ts) {
            let s = s_of_t(t, &p).map_err(e)?;
            let cf = circle::position(s, &p).map_err(e)?;
            worst = worst.max(pt.to_cartesian().distance(cf));
        }
    }
    // explicit phi(p) of the polar tractrix against its parametric form
    let t = 1.0;
    let p = LeashParams::new(1.0, t).map_err(e)?;
    let pole = Point2::new(-t, 0.0);
    let mut worst_explicit: f64 = 0.0;
    for s in uniform_grid(0.01, 12.0, 400) {
        let b = circle::position(s, &p).map_err(e)?;
        let d = b - pole;
        let phi = spiral_polar_explicit(d.norm(), t).map_err(e)?;
        let diff = (phi - d.angle()).rem_euclid(2.0 * PI);
        worst_explicit = worst_explicit.max(diff.min(2.0 * PI - diff));
    }
    check(
        worst <= 1e-8 && worst_explicit <= 1e-8,
        format!(
            "polar vs cartesian {worst:.2e}, explicit spiral {worst_explicit:.2e} (limit 1e-8)"
        ),
    )
}

fn errata_reproduction() -> Outcome {
    let (a, l) = (1.0, 2.0);
    let t0 = loria_jump_point(a, l);
    if (t0 - ((l + a) / (l - a)).sqrt()).abs() > 1e-15 {
        return Err(format!("jump point {t0}"));
    }
    let eps = 1e-7;
    let jump = loria_polar_erroneous(t0 - eps, a, l).map_err(e)?
        - loria_polar_erroneous(t0 + eps, a, l).map_err(e)?;
    let p = LeashParams::new(l / a, l).map_err(e)?;
    let pts = trace_polar(&p, &[t0 - eps, t0 + eps]).map_err(e)?;
    let gap = (pts[1].phi - pts[0].phi).abs();
    check(
        (jump.abs() - PI).abs() <= 1e-3 && gap <= 1e-6,
        format!(
            "published form jumps by {:.6}, corrected form moves {gap:.2e}",
            jump.abs()
        ),
    )
}

fn trivial_tractrix() -> Outcome {
    let lead = CircleCurve::canonical(0.5);
    let sol = find_periodic(&lead, 1.0, &PeriodicConfig::default()).map_err(e)?;
    let err_nu = (sol.nu_star - PI / 6.0).abs();
    let center = lead.center().ok_or("circle without center")?;
    let err_r = sol
        .trace_one_period
        .points()
        .map(|b| (b.distance(center) - 3f64.sqrt()).abs())
        .fold(0.0, f64::max);
    check(
        err_nu <= 1e-10 && err_r <= 1e-8,
        format!("|nu* - pi/6| {err_nu:.2e}, radius error {err_r:.2e}"),
    )
}

fn periodic_theorem() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 12,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (1.0..3.0f64, 0.4..1.0f64, 0.1..0.95f64);
    let worst_close = Cell::new(0.0f64);
    let cases = Cell::new(0usize);
    let res = runner.run(&strategy, |(a, ratio, frac)| {
        let fail = |x: tractrix_core::Error| TestCaseError::fail(x.to_string());
        let b = a * ratio;
        let curve = ellipse(a, b).map_err(fail)?;
        let leash = frac * contraction_bound(&curve);
        let sol = find_periodic(&curve, leash, &PeriodicConfig::default()).map_err(fail)?;
        prop_assert!(sol.residual <= 1e-10);
        let rate = contraction_rate(&curve, leash).map_err(fail)?;
        prop_assert!(rate < 1.0);
        // the ratio of successive residuals tends to map'(nu*) < 1
        let map = PeriodMap::new(&curve, leash).map_err(fail)?;
        let h = 1e-5;
        let slope = (map.apply(sol.nu_star + h).map_err(fail)?
            - map.apply(sol.nu_star - h).map_err(fail)?)
            / (2.0 * h);
        prop_assert!((0.0..1.0).contains(&slope), "slope {}", slope);
        for pair in sol.residuals.windows(2) {
            if pair[1] < 1e-12 {
                break;
            }
            let ratio = pair[1] / pair[0];
            prop_assert!(ratio < 1.0, "residuals {:?}", sol.residuals);
            if pair[0] < 1e-3 {
                prop_assert!(
                    (ratio - slope).abs() <= 0.01 * slope,
                    "ratio {} vs slope {} in {:?}",
                    ratio,
                    slope,
                    sol.residuals
                );
            }
        }
        let (dp, da) = closure_mismatch(&curve, &sol).map_err(fail)?;
        worst_close.set(worst_close.get().max(dp).max(da));
        prop_assert!(dp <= 1e-8 && da <= 1e-8, "closure {} {}", dp, da);
        let lo = (sol.nu_star - 0.6).max(-FRAC_PI_2);
        let hi = (sol.nu_star + 0.6).min(FRAC_PI_2);
        let step = leash.min(1.0 / curve.max_abs_curvature()) / 100.0;
        let g = gap_profile(&curve, leash, lo, hi, step).map_err(fail)?;
        for (i, d) in g.gap.windows(2).enumerate() {
            prop_assert!(
                d[1] > 0.0 && d[1] < d[0],
                "gap grows at step {}: {:?}",
                i,
                d
            );
        }
        cases.set(cases.get() + 1);
        Ok(())
    });
    res.map_err(|x| x.to_string())?;
    check(
        true,
        format!(
            "{} ellipses; worst closure {:.2e}",
            cases.get(),
            worst_close.get()
        ),
    )
}

fn pencil_identity() -> Outcome {
    let t = 1.0;
    let mut worst: f64 = 0.0;
    for w in [-0.8, -0.4, 0.0, 0.4, 0.8] {
        let m = pencil_asymptotic_circle(w, t).map_err(e)?;
        for q in m.boundary_points(360, t) {
            let r = w * (q.x * q.x + q.y * q.y + t * t) + 2.0 * t * q.x;
            worst = worst.max(r.abs());
        }
        // the foci are inverse to each other in every member
        if let PencilMember::Circle { center, radius, .. } = m {
            let [f0, f1] = pencil_foci(t);
            let prod = (f0.x - center.x) * (f1.x - center.x);
            worst = worst.max((prod - radius * radius).abs());
        }
    }
    let [f0, f1] = pencil_foci(t);
    let foci_ok = f0 == Point2::new(-t, 0.0) && f1 == Point2::new(t, 0.0);
    check(
        worst <= 1e-10 && foci_ok,
        format!("max residual {worst:.2e}, foci {f0:?} {f1:?}"),
    )
}

fn inversion_duality() -> Outcome {
    let d35 = verify_t3_t5_duality(1.0, 0.5, 200).map_err(e)?;
    let d1r = verify_t1_reverse_duality(1.0, 2.0, 200).map_err(e)?;
    check(
        d35 <= 1e-6 && d1r <= 1e-6,
        format!("external/internal {d35:.2e}, long-leash/reverse {d1r:.2e} (limit 1e-6)"),
    )
}

fn push_pull_involute() -> Outcome {
    // One full pulling turn, then half a turn of pushing. Pushing is unstable:
    // deviations grow like exp(l/T), so a full pushing turn (about 21 units of
    // arc) would amplify the 1e-13 level roundoff at the cusp past 1e-4.
    let r = 1.0;
    let (a0, a1) = (-2.0 * PI, PI);
    let spiral = archimedean_spiral(r, a0, a1).map_err(e)?;
    let theta0 = spiral.sample(0.0).theta;
    let tau0 = (-a0.cos()).atan2(a0.sin());
    let nu0 = tractrix_core::geometry::normalize_angle(theta0 - tau0).map_err(e)?;
    let cfg = IntegratorConfig::new(r, spiral.total_length())
        .with_mode(Mode::PushPull)
        .with_nu0(nu0)
        .with_step(4e-3);
    let tr = ode::trace(&spiral, &cfg).map_err(e)?;
    let cusp = tr
        .mode_switches
        .iter()
        .find(|m| m.kind == SwitchKind::CuspReversal)
        .ok_or("no cusp on the push-pull trace")?;
    let involute = |al: f64| Point2::new(al * al.cos() - al.sin(), al * al.sin() + al.cos()) * r;
    let mut worst: f64 = 0.0;
    for smp in &tr.samples[cusp.index + 1..] {
        let al = spiral.parameter_at(smp.l);
        worst = worst.max(smp.pose.position.distance(involute(al)));
    }
    let at_cusp = tr.samples[cusp.index]
        .pose
        .position
        .distance(Point2::new(0.0, r));
    check(
        worst <= 1e-4,
        format!("post-cusp deviation {worst:.2e}, cusp offset {at_cusp:.2e} (limit 1e-4)"),
    )
}

fn convergence_order() -> Outcome {
    let p = LeashParams::new(0.5, 1.0).map_err(e)?;
    let lead = p.leading_curve();
    let err = |h: f64| -> Result<f64, String> {
        let cfg = IntegratorConfig::new(1.0, 6.0)
            .with_step(h)
            .with_refine(1.0);
        let path = integrate_nu(&lead, &cfg).map_err(e)?;
        path.samples.iter().try_fold(0.0f64, |m, s| {
            Ok(m.max((s.nu - circle::nu_of_leading_arc(s.l, &p).map_err(e)?).abs()))
        })
    };
    let (e1, e2) = (err(0.04)?, err(0.02)?);
    let ratio = e1 / e2;
    check(
        ratio >= 14.0,
        format!("error ratio {ratio:.2} ({e1:.2e} -> {e2:.2e})"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("ODE trace matches the closed form", oracle_equivalence),
        (
            "curvature tan(nu)/T matches the natural equation",
            natural_equation_consistency,
        ),
        ("inflection at T ln((w+1)/w)", inflection_point),
        ("long-leash trace ends at S1", finite_length),
        (
            "reversal identity of the natural equation",
            reversal_identity,
        ),
        (
            "polar forms agree with the cartesian form",
            polar_consistency,
        ),
        (
            "published long-leash polar form jumps by pi",
            errata_reproduction,
        ),
        ("trivial tractrix on a circle", trivial_tractrix),
        ("periodic tractrix of an ellipse", periodic_theorem),
        ("asymptotic circles form one pencil", pencil_identity),
        ("inversion pairs tractrix types", inversion_duality),
        (
            "push-pull on a spiral gives the circle involute",
            push_pull_involute,
        ),
        ("fourth-order convergence", convergence_order),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} {:>2} {name}: {detail} [{:.2}s]",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
