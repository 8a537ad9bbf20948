//! Minimal SVG emitter. Geometry is written in y-up coordinates under a
//! single `scale(1,-1)` group; coordinates carry 6 decimals.

use std::fmt::Write as _;

use tractrix_core::curve::LeadingCurve;
use tractrix_core::{Point2, SwitchKind, Termination, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stroke {
    Leading,
    Trace,
    Guide,
    StartVector,
    StopVector,
}

impl Stroke {
    /// Colour, width in pixels of an 800 px wide rendering, dash pattern.
    fn style(self) -> (&'static str, f64, Option<(f64, f64)>) {
        match self {
            Stroke::Leading => ("#000000", 2.0, None),
            Stroke::Trace => ("#c0392b", 1.5, None),
            Stroke::Guide => ("#7f8c8d", 0.75, None),
            Stroke::StartVector => ("#2c3e50", 1.0, None),
            Stroke::StopVector => ("#2c3e50", 1.0, Some((4.0, 3.0))),
        }
    }

    const ALL: [Stroke; 5] = [
        Stroke::Leading,
        Stroke::Trace,
        Stroke::Guide,
        Stroke::StartVector,
        Stroke::StopVector,
    ];

    fn class(self) -> &'static str {
        match self {
            Stroke::Leading => "leading",
            Stroke::Trace => "trace",
            Stroke::Guide => "guide",
            Stroke::StartVector => "start-vector",
            Stroke::StopVector => "stop-vector",
        }
    }
}

#[derive(Debug, Default, Clone)]
pub struct Svg {
    title: String,
    body: String,
    min: Option<Point2>,
    max: Option<Point2>,
}

fn fmt_pt(p: Point2) -> String {
    format!("{:.6},{:.6}", p.x, p.y)
}

impl Svg {
    pub fn new(title: impl Into<String>) -> Self {
        Svg {
            title: title.into(),
            ..Svg::default()
        }
    }

    fn grow(&mut self, p: Point2) {
        if !p.is_finite() {
            return;
        }
        self.min = Some(
            self.min
                .map_or(p, |m| Point2::new(m.x.min(p.x), m.y.min(p.y))),
        );
        self.max = Some(
            self.max
                .map_or(p, |m| Point2::new(m.x.max(p.x), m.y.max(p.y))),
        );
    }

    pub fn polyline(&mut self, pts: &[Point2], stroke: Stroke) {
        let finite: Vec<Point2> = pts.iter().copied().filter(|p| p.is_finite()).collect();
        if finite.len() < 2 {
            return;
        }
        for &p in &finite {
            self.grow(p);
        }
        let coords: Vec<String> = finite.iter().map(|&p| fmt_pt(p)).collect();
        let _ = writeln!(
            self.body,
            r#"    <polyline class="{}" points="{}"/>"#,
            stroke.class(),
            coords.join(" ")
        );
    }

    pub fn segment(&mut self, a: Point2, b: Point2, stroke: Stroke) {
        self.grow(a);
        self.grow(b);
        let _ = writeln!(
            self.body,
            r#"    <line class="{}" x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#,
            stroke.class(),
            a.x,
            a.y,
            b.x,
            b.y
        );
    }

    pub fn circle(&mut self, c: Point2, r: f64, stroke: Stroke) {
        self.grow(c - Point2::new(r, r));
        self.grow(c + Point2::new(r, r));
        let _ = writeln!(
            self.body,
            r#"    <circle class="{}" cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#,
            stroke.class(),
            c.x,
            c.y,
            r
        );
    }

    /// Filled dot that does not enlarge the drawing; `class` names the event.
    pub fn marker(&mut self, p: Point2, class: &str, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"    <circle class="{class}" fill="{fill}" stroke="none" cx="{:.6}" cy="{:.6}" r="{{R}}"/>"#,
            p.x, p.y
        );
    }

    pub fn finish(&self) -> String {
        let (min, max) = match (self.min, self.max) {
            (Some(a), Some(b)) => (a, b),
            _ => (Point2::new(-1.0, -1.0), Point2::new(1.0, 1.0)),
        };
        let span = (max.x - min.x).max(max.y - min.y).max(1e-9);
        let pad = 0.05 * span;
        let (w, h) = (max.x - min.x + 2.0 * pad, max.y - min.y + 2.0 * pad);
        let px = 800.0;
        let body = self.body.replace("{R}", &format!("{:.6}", 0.006 * span));
        // widths in user units so that every renderer draws the same lines
        let unit = w / px;
        let mut style = String::new();
        for st in Stroke::ALL {
            let (colour, width, dash) = st.style();
            let _ = write!(
                style,
                "    .{} {{ fill: none; stroke: {colour}; stroke-width: {:.6}",
                st.class(),
                width * unit
            );
            if let Some((on, off)) = dash {
                let _ = write!(
                    style,
                    "; stroke-dasharray: {:.6} {:.6}",
                    on * unit,
                    off * unit
                );
            }
            style.push_str(" }\n");
        }
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
                "\n  <title>{}</title>\n",
                "  <style>\n{}  </style>\n",
                "  <g transform=\"scale(1,-1)\">\n{}  </g>\n</svg>\n"
            ),
            px,
            px * h / w,
            min.x - pad,
            -(max.y + pad),
            w,
            h,
            escape(&self.title),
            style,
            body
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Leading curve over the arc range of the trace.
pub fn leading_points(curve: &dyn LeadingCurve, l0: f64, l1: f64, n: usize) -> Vec<Point2> {
    let n = n.max(2);
    // polyline corners are added so they stay sharp
    let mut ls: Vec<f64> = (0..n)
        .map(|i| l0 + (l1 - l0) * i as f64 / (n - 1) as f64)
        .chain(curve.corners(l0, l1).iter().map(|c| c.l))
        .collect();
    ls.sort_by(f64::total_cmp);
    ls.into_iter().map(|l| curve.sample(l).point).collect()
}

/// Leading curve, trace branches, start vector, stop vector and event
/// markers in the style of the figures: solid start leash, dashed stop leash.
pub fn draw_trace(svg: &mut Svg, curve: &dyn LeadingCurve, trace: &Trace, draw_leading: bool) {
    let (Some(first), Some(last)) = (trace.first(), trace.last()) else {
        return;
    };
    if draw_leading {
        let (l0, l1) = (first.l.min(last.l), first.l.max(last.l));
        svg.polyline(&leading_points(curve, l0, l1, 600), Stroke::Leading);
    }
    for r in trace.branches() {
        let pts: Vec<Point2> = trace.samples[r].iter().map(|s| s.pose.position).collect();
        svg.polyline(&pts, Stroke::Trace);
    }
    svg.segment(
        first.pose.position,
        curve.sample(first.l).point,
        Stroke::StartVector,
    );
    if let Termination::Stopped { .. } = trace.termination {
        svg.segment(
            last.pose.position,
            curve.sample(last.l).point,
            Stroke::StopVector,
        );
    }
    for sw in &trace.mode_switches {
        let p = trace.samples[sw.index].pose.position;
        match sw.kind {
            SwitchKind::CuspReversal => svg.marker(p, "cusp", "#8e44ad"),
            SwitchKind::CornerReversal => svg.marker(p, "corner-reversal", "#d35400"),
            SwitchKind::StopSlack => svg.marker(p, "stop", "#2c3e50"),
        }
    }
    for &i in &trace.corners {
        svg.marker(trace.samples[i].pose.position, "corner", "#16a085");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flips_once_and_rounds() {
        let mut s = Svg::new("t<1>");
        s.polyline(
            &[Point2::new(0.0, 0.0), Point2::new(1.0 / 3.0, 2.0)],
            Stroke::Trace,
        );
        s.marker(Point2::new(0.5, 0.5), "cusp", "red");
        let out = s.finish();
        assert_eq!(out.matches("scale(1,-1)").count(), 1);
        assert!(out.contains("0.333333,2.000000"));
        assert!(out.contains("t&lt;1&gt;"));
        assert!(!out.contains("{R}"));
        assert!(out.contains(r#"class="cusp""#));
    }
}
