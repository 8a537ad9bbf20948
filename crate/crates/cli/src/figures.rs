//! Static analogues of the classical tractrix figures, one SVG per panel.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use tractrix_core::circle::{
    self, natural_curvature, star_branches, star_shape_parameter, uniform_grid,
};
use tractrix_core::curve::{
    archimedean_spiral, ellipse, lemniscate, parabola, Chain, LeadingCurve, Polyline,
};
use tractrix_core::geometry::normalize_angle;
use tractrix_core::inversion::{
    apply_inversion, circle_involute, pencil_asymptotic_circle, InversionSpec,
};
use tractrix_core::ode::{self, IntegratorConfig};
use tractrix_core::periodic::contraction_bound;
use tractrix_core::{
    find_periodic, CircleTractrix, LeashParams, Mode, PencilSpec, PeriodicConfig, Point2, Pose,
    Trace,
};

use crate::commands::draw_pencil;
use crate::curves::CurveSpec;
use crate::svg::{draw_trace, leading_points, Stroke, Svg};
use crate::{write_file, CliError};

pub const FIGURES: [&str; 10] = [
    "fig2", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig11", "fig12", "fig13",
];

type Panels = Vec<(String, String)>;

fn ode_trace(
    curve: &dyn LeadingCurve,
    leash: f64,
    max_arc: f64,
    mode: Mode,
) -> Result<Trace, CliError> {
    Ok(ode::trace(
        curve,
        &IntegratorConfig::new(leash, max_arc).with_mode(mode),
    )?)
}

fn curve_of(spec: &str) -> Result<Box<dyn LeadingCurve>, CliError> {
    CurveSpec::parse(spec)?.build(0.0)
}

/// Tractrices of several curves; stopped traces get a dashed stop leash.
fn fig2() -> Result<Panels, CliError> {
    let mut out = Vec::new();
    for (tag, spec, leash) in [
        ("a", "ellipse:a=2,b=1", 0.8),
        ("b", "sinusoid:amp=1,wavelength=6.283185307179586", 1.2),
        ("c", "square:side=2", 0.7),
        ("d", "parabola:c=0.5,x0=-2,x1=2", 1.0),
    ] {
        let curve = curve_of(spec)?;
        let len = curve
            .period()
            .map(|p| 2.0 * p.length)
            .or_else(|| curve.length())
            .unwrap_or(10.0);
        let tr = ode_trace(curve.as_ref(), leash, len, Mode::PullOnly)?;
        let mut svg = Svg::new(format!("tractrix of {spec}, T={leash}"));
        let l1 = curve.period().map_or(len, |p| p.length);
        svg.polyline(
            &leading_points(curve.as_ref(), 0.0, l1, 600),
            Stroke::Leading,
        );
        draw_trace(&mut svg, curve.as_ref(), &tr, false);
        out.push((format!("fig2{tag}.svg"), svg.finish()));
    }
    Ok(out)
}

/// Push-pull tractrix of an Archimedean spiral with T equal to the pitch:
/// after the cusp it runs along the involute of the circle of radius T.
fn fig4() -> Result<Panels, CliError> {
    let r = 1.0;
    let (a0, a1) = (-2.0 * PI, PI);
    let spiral = archimedean_spiral(r, a0, a1)?;
    let theta0 = spiral.sample(0.0).theta;
    let tau0 = (-a0.cos()).atan2(a0.sin());
    let cfg = IntegratorConfig::new(r, spiral.total_length())
        .with_mode(Mode::PushPull)
        .with_nu0(normalize_angle(theta0 - tau0)?)
        .with_step(4e-3);
    let tr = ode::trace(&spiral, &cfg)?;
    let mut svg = Svg::new("push-pull tractrix of an Archimedean spiral");
    svg.circle(Point2::ORIGIN, r, Stroke::Guide);
    let inv: Vec<Point2> = uniform_grid(0.0, a1, 200)
        .into_iter()
        .map(|al| circle_involute(Point2::ORIGIN, r, al, 1.0).rotate(PI / 2.0))
        .collect();
    svg.polyline(&inv, Stroke::Guide);
    draw_trace(&mut svg, &spiral, &tr, true);
    Ok(vec![("fig4.svg".into(), svg.finish())])
}

/// Push-pull trajectories of an ellipse and a square.
fn fig5() -> Result<Panels, CliError> {
    let mut out = Vec::new();
    for (tag, spec, leash, laps) in [
        ("a", "ellipse:a=2,b=1", 1.2, 3.0),
        ("b", "square:side=2", 1.0, 3.0),
    ] {
        let curve = curve_of(spec)?;
        let lap = curve.period().map_or(10.0, |p| p.length);
        let tr = ode_trace(curve.as_ref(), leash, laps * lap, Mode::PushPull)?;
        let mut svg = Svg::new(format!("push-pull tractrix of {spec}, T={leash}"));
        svg.polyline(
            &leading_points(curve.as_ref(), 0.0, lap, 600),
            Stroke::Leading,
        );
        draw_trace(&mut svg, curve.as_ref(), &tr, false);
        out.push((format!("fig5{tag}.svg"), svg.finish()));
    }
    Ok(out)
}

/// Star-shaped closed tractrices of a circle.
fn fig6() -> Result<Panels, CliError> {
    let mut out = Vec::new();
    for (num, den) in [(1u32, 3u32), (1, 4), (2, 5)] {
        let leash = 1.0;
        let w = star_shape_parameter(num, den)?;
        let center = Point2::new(-leash / w, 0.0);
        let mut svg = Svg::new(format!("star tractrix, sector {num}/{den} of a turn"));
        svg.circle(center, leash / w, Stroke::Leading);
        for b in star_branches(num, den, leash, 200)? {
            svg.polyline(&b, Stroke::Trace);
        }
        out.push((format!("fig6_{num}_{den}.svg"), svg.finish()));
    }
    Ok(out)
}

/// Families of periodic tractrices.
fn fig7() -> Result<Panels, CliError> {
    let mut out = Vec::new();
    let curves: [(&str, Box<dyn LeadingCurve>); 2] = [
        ("a", Box::new(ellipse(2.0, 1.0)?)),
        ("b", Box::new(lemniscate(2.0)?)),
    ];
    for (tag, curve) in curves {
        let bound = contraction_bound(curve.as_ref());
        let lap = curve.period().map_or(10.0, |p| p.length);
        let mut svg = Svg::new(format!("periodic tractrices, T up to {bound:.3}"));
        svg.polyline(
            &leading_points(curve.as_ref(), 0.0, lap, 800),
            Stroke::Leading,
        );
        for frac in [0.25, 0.5, 0.75, 0.95] {
            let sol = find_periodic(curve.as_ref(), frac * bound, &PeriodicConfig::default())?;
            let pts: Vec<Point2> = sol.trace_one_period.points().collect();
            svg.polyline(&pts, Stroke::Trace);
        }
        out.push((format!("fig7{tag}.svg"), svg.finish()));
    }
    Ok(out)
}

/// Natural equations k(s) for several shape parameters, clipped to |k| <= 4.
fn fig8() -> Result<Panels, CliError> {
    let mut svg = Svg::new("curvature against arc length, T=1");
    svg.segment(Point2::new(0.0, 0.0), Point2::new(5.0, 0.0), Stroke::Guide);
    for w in [-0.5, 0.0, 0.5, 1.0, 2.0, 3.0] {
        let p = LeashParams::new(w, 1.0)?;
        let end = circle::arc_limit(&p).map_or(5.0, |s1| s1.min(5.0));
        let mut run = Vec::new();
        for s in uniform_grid(0.0, end, 800) {
            let k = natural_curvature(s, &p)?;
            if k.abs() <= 4.0 {
                run.push(Point2::new(s, k));
            } else {
                svg.polyline(&run, Stroke::Trace);
                run.clear();
            }
        }
        svg.polyline(&run, Stroke::Trace);
    }
    Ok(vec![("fig8.svg".into(), svg.finish())])
}

/// Gallery of the five types of circle tractrices.
fn fig9() -> Result<Panels, CliError> {
    let mut out = Vec::new();
    for (tag, w) in [("a", 2.0), ("b", 1.0), ("c", 0.5), ("d", 0.0), ("e", -0.5)] {
        let leash = 1.0;
        let p = LeashParams::new(w, leash)?;
        let ct = CircleTractrix::new(p)?;
        let tr = ct.trace_uniform(8.0 * leash, 600)?;
        let lead = p.leading_curve();
        let mut svg = Svg::new(format!("{} ({}), w={w}", ct.class, ct.class.description()));
        // a full turn of the circle, or the stretch of line that was used
        let span = lead
            .period()
            .map_or_else(|| tr.last().map_or(1.0, |s| s.l).max(1.0), |p| p.length);
        svg.polyline(&leading_points(&lead, 0.0, span, 600), Stroke::Leading);
        draw_trace(&mut svg, &lead, &tr, false);
        out.push((format!("fig9{tag}.svg"), svg.finish()));
    }
    Ok(out)
}

fn fig11() -> Result<Panels, CliError> {
    let leash = 1.0;
    let ws = [-0.8, -0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6, 0.8];
    let spec = PencilSpec::new(leash, Pose::new(Point2::new(leash, 0.0), PI), ws.to_vec())?;
    let members = ws
        .iter()
        .map(|&w| pencil_asymptotic_circle(w, leash))
        .collect::<Result<Vec<_>, _>>()?;
    let mut svg = Svg::new("pencil of tractrices and their asymptotic circles");
    draw_pencil(&mut svg, &spec, &members, 600)?;
    Ok(vec![("fig11.svg".into(), svg.finish())])
}

/// Two tractrices of a parabola continued by a line, with the leash circles
/// they cross at right angles.
fn fig12() -> Result<Panels, CliError> {
    let parts: Vec<Box<dyn LeadingCurve>> = vec![
        Box::new(parabola(0.5, -2.0, 0.0)?),
        Box::new(Polyline::new(
            &[Point2::ORIGIN, Point2::new(4.0, 0.0)],
            false,
        )?),
    ];
    let chain = Chain::new(parts)?;
    let len = chain.total_length();
    let mut svg = Svg::new("tractrices as orthogonal trajectories of leash circles");
    svg.polyline(&leading_points(&chain, 0.0, len, 800), Stroke::Leading);
    for leash in [0.6, 1.2] {
        for l in uniform_grid(0.0, len, 9) {
            svg.circle(chain.sample(l).point, leash, Stroke::Guide);
        }
        let tr = ode_trace(&chain, leash, len, Mode::PullOnly)?;
        draw_trace(&mut svg, &chain, &tr, false);
    }
    Ok(vec![("fig12.svg".into(), svg.finish())])
}

/// Circle families of radius T around a circle of radius R and their
/// orthogonal tractrices, with the inverse images.
fn fig13() -> Result<Panels, CliError> {
    let mut out = Vec::new();
    for (tag, w) in [("a", 2.0), ("b", 0.5), ("c", 1.0)] {
        let leash = 1.0;
        let p = LeashParams::new(w, leash)?;
        let lead = p.leading_curve();
        let center = lead.center().unwrap_or(Point2::ORIGIN);
        let r = p.radius();
        let mut svg = Svg::new(format!("orthogonal trajectories, T/R = {w}"));
        svg.circle(center, r, Stroke::Leading);
        for l in uniform_grid(0.0, 2.0 * PI * r, 25).into_iter().skip(1) {
            svg.circle(lead.sample(l).point, leash, Stroke::Guide);
        }
        let tr = CircleTractrix::new(p)?.trace_uniform(6.0 * leash, 600)?;
        draw_trace(&mut svg, &lead, &tr, false);
        let power = if w == 1.0 {
            4.0 * r * r
        } else {
            r * r - leash * leash
        };
        let inv = InversionSpec::new(center, power)?;
        if power > 0.0 {
            svg.circle(center, power.sqrt(), Stroke::Guide);
        }
        let image = tr
            .points()
            .filter_map(|q| apply_inversion(&inv, q).ok())
            .filter(|q| q.distance(center) < 6.0 * r.max(leash))
            .collect::<Vec<_>>();
        svg.polyline(&image, Stroke::StopVector);
        out.push((format!("fig13{tag}.svg"), svg.finish()));
    }
    Ok(out)
}

/// Renders one figure (or `all`) into (file name, svg) pairs.
pub fn render(name: &str) -> Result<Panels, CliError> {
    match name {
        "fig2" => fig2(),
        "fig4" => fig4(),
        "fig5" => fig5(),
        "fig6" => fig6(),
        "fig7" => fig7(),
        "fig8" => fig8(),
        "fig9" => fig9(),
        "fig11" => fig11(),
        "fig12" => fig12(),
        "fig13" => fig13(),
        "all" => {
            let mut all = Vec::new();
            for f in FIGURES {
                all.extend(render(f)?);
            }
            Ok(all)
        }
        _ => Err(CliError::Usage(format!(
            "unknown figure `{name}` (expected one of {}, all)",
            FIGURES.join(", ")
        ))),
    }
}

/// Writes the panels of `name` into `dir` and returns their paths.
pub fn write(name: &str, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut paths = Vec::new();
    for (file, svg) in render(name)? {
        let path = dir.join(file);
        write_file(&path, &svg)?;
        paths.push(path);
    }
    Ok(paths)
}
