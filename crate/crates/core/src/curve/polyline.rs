use super::{reduce_period, Corner, CurveSample, LeadingCurve, Period};
use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, Point2};

/// Polyline in arc-length form. Vertices are curvature impulses: theta jumps
/// by the exterior angle there instead of being smoothed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<Point2>,
    /// Cumulative length at each segment start, plus the total at the end.
    cumulative: Vec<f64>,
    /// Unwrapped direction of each segment.
    directions: Vec<f64>,
    /// Turn at the end of each segment (the closing turn last, when closed).
    turns: Vec<f64>,
    closed: bool,
}

/// Builds the arc-length form of a polyline. A closed polyline may repeat its
/// first point at the end.
pub fn resample_polyline(points: &[Point2], closed: bool) -> Result<Polyline> {
    Polyline::new(points, closed)
}

impl Polyline {
    pub fn new(points: &[Point2], closed: bool) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("polyline vertex"));
        }
        let mut pts = points.to_vec();
        if closed && pts.len() > 2 && pts.first() == pts.last() {
            pts.pop();
        }
        if pts.len() < 2 {
            return Err(Error::TooFewPoints);
        }
        let mut verts = pts.clone();
        if closed {
            verts.push(pts[0]);
        }
        let mut cumulative = vec![0.0];
        let mut raw_dirs = Vec::with_capacity(verts.len() - 1);
        for (i, w) in verts.windows(2).enumerate() {
            let d = w[1] - w[0];
            let len = d.norm();
            if len == 0.0 {
                return Err(Error::DuplicatePoint(i + 1));
            }
            cumulative.push(cumulative[i] + len);
            raw_dirs.push(d.angle());
        }
        let mut directions = Vec::with_capacity(raw_dirs.len());
        let mut turns = Vec::with_capacity(raw_dirs.len());
        directions.push(raw_dirs[0]);
        for i in 1..raw_dirs.len() {
            let turn = wrap_angle(raw_dirs[i] - raw_dirs[i - 1]);
            turns.push(turn);
            directions.push(directions[i - 1] + turn);
        }
        if closed {
            let last = *raw_dirs.last().unwrap();
            turns.push(wrap_angle(raw_dirs[0] - last));
        }
        Ok(Polyline {
            points: pts,
            cumulative,
            directions,
            turns,
            closed,
        })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn total_length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Corner impulses within one traversal (one period when closed).
    pub fn corner_angles(&self) -> &[f64] {
        &self.turns
    }

    fn total_turn(&self) -> f64 {
        self.turns.iter().sum()
    }

    fn vertex(&self, i: usize) -> Point2 {
        self.points[i % self.points.len()]
    }

    fn segment_sample(&self, seg: usize, r: f64) -> CurveSample {
        let len = self.cumulative[seg + 1] - self.cumulative[seg];
        let t = (r - self.cumulative[seg]) / len;
        CurveSample {
            point: self.vertex(seg).lerp(self.vertex(seg + 1), t),
            theta: self.directions[seg],
            curvature: 0.0,
        }
    }

    fn locate(&self, l: f64, left: bool) -> CurveSample {
        let total = self.total_length();
        let nseg = self.directions.len();
        let (k, mut r) = if self.closed {
            reduce_period(l, total)
        } else {
            (0.0, l.clamp(0.0, total))
        };
        let mut k = k;
        if self.closed && left && r == 0.0 {
            k -= 1.0;
            r = total;
        }
        let seg = if left {
            self.cumulative[1..]
                .partition_point(|&c| c < r)
                .min(nseg - 1)
        } else {
            self.cumulative[1..]
                .partition_point(|&c| c <= r)
                .min(nseg - 1)
        };
        let mut s = self.segment_sample(seg, r);
        if k != 0.0 {
            s.theta += k * self.total_turn();
        }
        s
    }
}

impl LeadingCurve for Polyline {
    fn sample(&self, l: f64) -> CurveSample {
        self.locate(l, false)
    }

    fn sample_left(&self, l: f64) -> CurveSample {
        self.locate(l, true)
    }

    fn length(&self) -> Option<f64> {
        (!self.closed).then(|| self.total_length())
    }

    fn period(&self) -> Option<Period> {
        self.closed.then(|| Period {
            length: self.total_length(),
            shift: Point2::ORIGIN,
            turn: self.total_turn(),
        })
    }

    fn corners(&self, from: f64, to: f64) -> Vec<Corner> {
        let mut out = Vec::new();
        if to <= from {
            return out;
        }
        let total = self.total_length();
        if !self.closed {
            for (i, &turn) in self.turns.iter().enumerate() {
                let l = self.cumulative[i + 1];
                if l > from && l <= to {
                    out.push(Corner { l, turn });
                }
            }
            return out;
        }
        let first = (from / total).floor() as i64;
        let last = (to / total).ceil() as i64;
        for k in first..=last {
            let base = k as f64 * total;
            for (i, &turn) in self.turns.iter().enumerate() {
                let l = base + self.cumulative[i + 1];
                if l > from && l <= to {
                    out.push(Corner { l, turn });
                }
            }
        }
        out
    }

    fn max_abs_curvature(&self) -> f64 {
        0.0
    }
}
