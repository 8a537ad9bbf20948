//! Subcommand bodies. Each returns the text destined for stdout (or for the
//! output file) so that the binary stays a thin argument parser.

use std::f64::consts::FRAC_PI_2;

use serde_json::json;
use tractrix_core::circle::{arc_limit, uniform_grid};
use tractrix_core::curve::LeadingCurve;
use tractrix_core::inversion::{pencil_asymptotic_circle, pencil_foci, PencilMember};
use tractrix_core::ode::{self, IntegratorConfig};
use tractrix_core::periodic::{closure_mismatch, contraction_bound};
use tractrix_core::{
    classify as classify_w, find_periodic, CircleTractrix, LeashParams, Mode, PencilSpec,
    PeriodicConfig, Point2, Pose, Trace,
};

use crate::curves::CurveSpec;
use crate::job::{Engine, Format, TraceJob};
use crate::output::{num, opt, termination_tag, OutputRecord};
use crate::svg::{draw_trace, Stroke, Svg};
use crate::CliError;

/// Shape parameter from exactly one of w and K.
pub fn resolve_w(w: Option<f64>, curvature: Option<f64>, leash: f64) -> Result<f64, CliError> {
    match (w, curvature) {
        (Some(w), None) => Ok(w),
        (None, Some(k)) => Ok(k * leash),
        (Some(_), Some(_)) => Err(CliError::Usage("give either w or K, not both".into())),
        (None, None) => Err(CliError::Usage("give w or K".into())),
    }
}

fn inf_or(v: Option<f64>) -> String {
    v.map_or_else(|| "inf".into(), |x| x.to_string())
}

/// `T3 (external, short leash), S1=inf, s0=...`
pub fn classify(w: Option<f64>, curvature: Option<f64>, leash: f64) -> Result<String, CliError> {
    let w = resolve_w(w, curvature, leash)?;
    let class = classify_w(w, leash)?;
    let ct = CircleTractrix::new(LeashParams::new(w, leash)?)?;
    Ok(format!(
        "{class} ({}), S1={}, s0={}",
        class.description(),
        inf_or(ct.s1),
        opt(ct.s0)
    ))
}

/// A finished trace together with the curve it follows.
pub struct TracedJob {
    pub curve: Box<dyn LeadingCurve>,
    pub trace: Trace,
    pub record: OutputRecord,
}

fn circle_params(job: &TraceJob) -> Result<LeashParams, CliError> {
    let w = match job.curve {
        CurveSpec::Line => {
            if job.w.unwrap_or(0.0) != 0.0 || job.curvature.unwrap_or(0.0) != 0.0 {
                return Err(CliError::Usage("a line has w = K = 0".into()));
            }
            0.0
        }
        _ => resolve_w(job.w, job.curvature, job.leash)?,
    };
    Ok(LeashParams::new(w, job.leash)?)
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::PullOnly => "pull",
        Mode::PushPull => "pushpull",
    }
}

/// About `n` evenly spread sample indices plus every sample that sits on an
/// event (both sides of corners and cusps, and the stop point).
pub fn thin_indices(trace: &Trace, n: usize) -> Vec<usize> {
    let len = trace.len();
    if len <= n {
        return (0..len).collect();
    }
    let mut ix: Vec<usize> = (0..n)
        .map(|i| ((i as f64) * (len - 1) as f64 / (n - 1) as f64).round() as usize)
        .collect();
    for sw in &trace.mode_switches {
        ix.push(sw.index);
        if sw.index + 1 < len {
            ix.push(sw.index + 1);
        }
    }
    for &c in &trace.corners {
        ix.push(c);
        if c + 1 < len && trace.samples[c + 1].l == trace.samples[c].l {
            ix.push(c + 1);
        }
    }
    ix.sort_unstable();
    ix.dedup();
    ix
}

pub fn run_trace(job: &TraceJob) -> Result<TracedJob, CliError> {
    let circle = job.curve.is_circle_family();
    if job.engine == Engine::Closed && !circle {
        return Err(CliError::Usage(format!(
            "no closed form for {}; use --engine ode",
            job.curve.describe()
        )));
    }
    let mut meta: Vec<(String, String)> = Vec::new();
    let params = if circle {
        let p = circle_params(job)?;
        let ct = CircleTractrix::new(p)?;
        meta.push(("class".into(), ct.class.to_string()));
        meta.push(("w".into(), p.w.to_string()));
        meta.push(("T".into(), job.leash.to_string()));
        meta.push(("S1".into(), inf_or(ct.s1)));
        meta.push(("s0".into(), opt(ct.s0)));
        Some(p)
    } else {
        meta.push(("class".into(), "none".into()));
        meta.push(("w".into(), "none".into()));
        meta.push(("T".into(), job.leash.to_string()));
        meta.push(("S1".into(), "none".into()));
        meta.push(("s0".into(), "none".into()));
        None
    };

    let (curve, trace, rows): (Box<dyn LeadingCurve>, Trace, Option<Vec<usize>>) =
        match (params, job.engine) {
            (Some(p), Engine::Auto | Engine::Closed) => {
                let s_max = job.length.unwrap_or(10.0 * job.leash.abs());
                let end = arc_limit(&p).map_or(s_max, |s1| s1.min(s_max));
                let trace = CircleTractrix::new(p)?.trace(&uniform_grid(0.0, end, job.samples))?;
                (Box::new(p.leading_curve()), trace, None)
            }
            _ => {
                let curve: Box<dyn LeadingCurve> = match params {
                    Some(p) => Box::new(p.leading_curve()),
                    None => job.curve.build(0.0)?,
                };
                let max_arc = job
                    .length
                    .or_else(|| curve.period().map(|p| p.length))
                    .or_else(|| curve.length())
                    .unwrap_or(10.0 * job.leash.abs());
                let mut cfg = IntegratorConfig::new(job.leash, max_arc)
                    .with_mode(job.mode)
                    .with_nu0(job.nu0.unwrap_or(-FRAC_PI_2));
                if let Some(h) = job.step {
                    cfg = cfg.with_step(h);
                }
                let trace = ode::trace(curve.as_ref(), &cfg)?;
                let ix = thin_indices(&trace, job.samples);
                (curve, trace, Some(ix))
            }
        };
    meta.push(("termination".into(), termination_tag(trace.termination)));
    meta.push(("curve".into(), job.curve.describe()));
    meta.push(("mode".into(), mode_name(job.mode).into()));
    log::info!(
        "traced {} samples on {}, {:?}",
        trace.len(),
        job.curve.describe(),
        trace.termination
    );
    let record = OutputRecord::from_trace(meta, &trace, rows.as_deref());
    Ok(TracedJob {
        curve,
        trace,
        record,
    })
}

/// Renders a finished job in the requested format.
pub fn render(done: &TracedJob, format: Format, title: &str) -> String {
    match format {
        Format::Csv => done.record.to_csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&done.record.to_json()).unwrap_or_default();
            s.push('\n');
            s
        }
        Format::Svg => {
            let mut svg = Svg::new(title);
            draw_trace(&mut svg, done.curve.as_ref(), &done.trace, true);
            svg.finish()
        }
    }
}

pub fn trace(job: &TraceJob) -> Result<String, CliError> {
    let done = run_trace(job)?;
    Ok(render(
        &done,
        job.format,
        &format!("tractrix of {}", job.curve.describe()),
    ))
}

pub const DEFAULT_PENCIL: [f64; 5] = [-0.8, -0.4, 0.0, 0.4, 0.8];

/// Pencil of short-leash tractrices with their asymptotic circles.
pub fn pencil(leash: f64, ws: &[f64], samples: usize, format: Format) -> Result<String, CliError> {
    let spec = PencilSpec::new(
        leash,
        Pose::new(Point2::new(leash, 0.0), std::f64::consts::PI),
        ws.to_vec(),
    )?;
    let members: Vec<PencilMember> = ws
        .iter()
        .map(|&w| pencil_asymptotic_circle(w, leash))
        .collect::<Result<_, _>>()?;
    match format {
        Format::Svg => {
            let mut svg = Svg::new(format!("pencil of tractrices, T={leash}"));
            draw_pencil(&mut svg, &spec, &members, samples)?;
            Ok(svg.finish())
        }
        Format::Json | Format::Csv => {
            let rows: Vec<_> = ws
                .iter()
                .zip(&members)
                .map(|(&w, m)| {
                    let residual = m
                        .boundary_points(360, leash)
                        .iter()
                        .map(|&p| m.implicit().eval(p).abs())
                        .fold(0.0, f64::max);
                    match *m {
                        PencilMember::Circle { center, radius, .. } => json!({
                            "w": w, "kind": "circle", "center": [center.x, center.y],
                            "radius": radius, "residual": num(residual)
                        }),
                        PencilMember::Line { .. } => json!({
                            "w": w, "kind": "line", "x": 0.0, "residual": num(residual)
                        }),
                    }
                })
                .collect();
            let foci = pencil_foci(leash);
            let v = json!({
                "T": leash,
                "foci": [[foci[0].x, foci[0].y], [foci[1].x, foci[1].y]],
                "radical_axis": "x = 0",
                "members": rows,
            });
            Ok(serde_json::to_string_pretty(&v).unwrap_or_default() + "\n")
        }
    }
}

pub fn draw_pencil(
    svg: &mut Svg,
    spec: &PencilSpec,
    members: &[PencilMember],
    samples: usize,
) -> Result<(), CliError> {
    let t = spec.leash;
    for m in members {
        match *m {
            PencilMember::Circle { center, radius, .. } => {
                // the wide circles of small |w| would swamp the picture
                if radius <= 8.0 * t {
                    svg.circle(center, radius, Stroke::Guide);
                }
            }
            PencilMember::Line { .. } => svg.segment(
                Point2::new(0.0, -3.0 * t),
                Point2::new(0.0, 3.0 * t),
                Stroke::Guide,
            ),
        }
    }
    for tr in spec.traces(12.0 * t, samples)? {
        let pts: Vec<Point2> = tr.points().collect();
        svg.polyline(&pts, Stroke::Trace);
    }
    for f in pencil_foci(t) {
        svg.marker(f, "focus", "#2c3e50");
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicArgs {
    pub curve: CurveSpec,
    pub curvature: Option<f64>,
    pub leash: f64,
    pub nu0: f64,
    pub tol: f64,
    pub allow_beyond_bound: bool,
    pub step: Option<f64>,
}

pub struct PeriodicOutcome {
    pub summary: String,
    pub traced: TracedJob,
}

pub fn periodic(args: &PeriodicArgs) -> Result<PeriodicOutcome, CliError> {
    let curve = match (&args.curve, args.curvature) {
        (CurveSpec::Circle, None) => return Err(CliError::Usage("a circle needs K".into())),
        (spec, k) => spec.build(k.unwrap_or(0.0))?,
    };
    let cfg = PeriodicConfig {
        tol: args.tol,
        allow_beyond_bound: args.allow_beyond_bound,
        step: args.step,
        nu0: args.nu0,
        ..PeriodicConfig::default()
    };
    let sol = find_periodic(curve.as_ref(), args.leash, &cfg)?;
    let (dpos, dangle) = closure_mismatch(curve.as_ref(), &sol)?;
    let bound = contraction_bound(curve.as_ref());
    let summary = json!({
        "curve": args.curve.describe(),
        "T": args.leash,
        "contraction_bound": num(bound),
        "nu_star": sol.nu_star,
        "residual": sol.residual,
        "iterations": sol.iterations,
        "beyond_bound": sol.beyond_bound,
        "closure": { "position": dpos, "angle": dangle },
    });
    let meta = vec![
        ("class".into(), "periodic".into()),
        ("w".into(), "none".into()),
        ("T".into(), args.leash.to_string()),
        ("S1".into(), "none".into()),
        ("s0".into(), "none".into()),
        (
            "termination".into(),
            termination_tag(sol.trace_one_period.termination),
        ),
        ("curve".into(), args.curve.describe()),
        (
            "mode".into(),
            if sol.beyond_bound { "pushpull" } else { "pull" }.into(),
        ),
        ("nu_star".into(), sol.nu_star.to_string()),
    ];
    let record = OutputRecord::from_trace(meta, &sol.trace_one_period, None);
    Ok(PeriodicOutcome {
        summary: serde_json::to_string_pretty(&summary).unwrap_or_default() + "\n",
        traced: TracedJob {
            curve,
            trace: sol.trace_one_period,
            record,
        },
    })
}
