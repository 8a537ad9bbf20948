use std::f64::consts::{PI, TAU};

use super::{Corner, CurveSample, LeadingCurve};
use crate::error::{Error, Result};
use crate::geometry::wrap_angle;

const JOIN_TOL: f64 = 1e-9;
/// Joins turning less than this are smooth, not corners.
const SMOOTH_TURN: f64 = 1e-12;

/// Finite curves joined end to start. A tangent jump at a join becomes a corner.
pub struct Chain {
    parts: Vec<Box<dyn LeadingCurve>>,
    /// Arc length at the start of each part, plus the total.
    offsets: Vec<f64>,
    /// Theta offset (a multiple of 2pi) that keeps theta unwrapped across joins.
    unwrap: Vec<f64>,
    join_turns: Vec<f64>,
}

impl std::fmt::Debug for Chain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Chain")
            .field("offsets", &self.offsets)
            .field("join_turns", &self.join_turns)
            .finish()
    }
}

impl Chain {
    pub fn new(parts: Vec<Box<dyn LeadingCurve>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::TooFewPoints);
        }
        let mut offsets = vec![0.0];
        let mut unwrap = vec![0.0];
        let mut join_turns = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            let len = part
                .length()
                .ok_or_else(|| Error::Invalid(format!("chain part {i} is unbounded")))?;
            if i > 0 {
                let prev = &parts[i - 1];
                let end = prev.sample_left(prev.length().unwrap_or(0.0));
                let start = part.sample(0.0);
                if end.point.distance(start.point) > JOIN_TOL {
                    return Err(Error::Disconnected(i));
                }
                let end_theta = end.theta + unwrap[i - 1];
                let turn = wrap_angle(start.theta - end_theta);
                let turn = if turn.abs() < SMOOTH_TURN { 0.0 } else { turn };
                if turn.abs() >= PI {
                    return Err(Error::DegenerateCorner(turn));
                }
                let target = end_theta + turn;
                unwrap.push(((target - start.theta) / TAU).round() * TAU);
                join_turns.push(turn);
            }
            offsets.push(offsets[i] + len);
        }
        Ok(Chain {
            parts,
            offsets,
            unwrap,
            join_turns,
        })
    }

    pub fn total_length(&self) -> f64 {
        *self.offsets.last().unwrap()
    }

    fn locate(&self, l: f64, left: bool) -> CurveSample {
        let l = l.clamp(0.0, self.total_length());
        let n = self.parts.len();
        let inner = &self.offsets[1..n];
        let i = if left {
            inner.partition_point(|&o| o < l)
        } else {
            inner.partition_point(|&o| o <= l)
        };
        let local = l - self.offsets[i];
        let mut s = if left {
            self.parts[i].sample_left(local)
        } else {
            self.parts[i].sample(local)
        };
        s.theta += self.unwrap[i];
        s
    }
}

impl LeadingCurve for Chain {
    fn sample(&self, l: f64) -> CurveSample {
        self.locate(l, false)
    }

    fn sample_left(&self, l: f64) -> CurveSample {
        self.locate(l, true)
    }

    fn length(&self) -> Option<f64> {
        Some(self.total_length())
    }

    fn corners(&self, from: f64, to: f64) -> Vec<Corner> {
        let mut out = Vec::new();
        for (i, part) in self.parts.iter().enumerate() {
            let base = self.offsets[i];
            if i > 0 {
                let turn = self.join_turns[i - 1];
                if turn != 0.0 && base > from && base <= to {
                    out.push(Corner { l: base, turn });
                }
            }
            let len = self.offsets[i + 1] - base;
            for c in part.corners((from - base).max(0.0).min(len), (to - base).min(len)) {
                // a part's own end corner, if any, is superseded by the join
                if c.l < len || i + 1 == self.parts.len() {
                    out.push(Corner {
                        l: base + c.l,
                        turn: c.turn,
                    });
                }
            }
        }
        out.retain(|c| c.l > from && c.l <= to);
        out.sort_by(|a, b| a.l.total_cmp(&b.l));
        out
    }

    fn breakpoints(&self, from: f64, to: f64) -> Vec<f64> {
        let mut out: Vec<f64> = self.corners(from, to).into_iter().map(|c| c.l).collect();
        for (i, part) in self.parts.iter().enumerate() {
            let base = self.offsets[i];
            if i > 0 && base > from && base <= to {
                out.push(base);
            }
            let len = self.offsets[i + 1] - base;
            for b in part.breakpoints((from - base).max(0.0).min(len), (to - base).min(len)) {
                out.push(base + b);
            }
        }
        out.retain(|&b| b > from && b <= to);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    fn max_abs_curvature(&self) -> f64 {
        self.parts
            .iter()
            .map(|p| p.max_abs_curvature())
            .fold(0.0, f64::max)
    }
}

/// A finite curve traversed from its end back to its start.
#[derive(Debug, Clone)]
pub struct Reversed<C> {
    inner: C,
    len: f64,
}

impl<C: LeadingCurve> Reversed<C> {
    pub fn new(inner: C) -> Result<Self> {
        let len = inner
            .length()
            .ok_or_else(|| Error::Invalid("cannot reverse an unbounded curve".into()))?;
        Ok(Reversed { inner, len })
    }

    fn flip(s: CurveSample) -> CurveSample {
        CurveSample {
            point: s.point,
            theta: s.theta + PI,
            curvature: -s.curvature,
        }
    }
}

impl<C: LeadingCurve> LeadingCurve for Reversed<C> {
    fn sample(&self, l: f64) -> CurveSample {
        Self::flip(self.inner.sample_left(self.len - l))
    }

    fn sample_left(&self, l: f64) -> CurveSample {
        Self::flip(self.inner.sample(self.len - l))
    }

    fn length(&self) -> Option<f64> {
        Some(self.len)
    }

    fn corners(&self, from: f64, to: f64) -> Vec<Corner> {
        let eps = 1e-12 * (1.0 + self.len);
        // original corners c with len - to <= c < len - from
        let mut out: Vec<Corner> = self
            .inner
            .corners(self.len - to - eps, self.len - from)
            .into_iter()
            .map(|c| Corner {
                l: self.len - c.l,
                turn: -c.turn,
            })
            .filter(|c| c.l > from && c.l <= to)
            .collect();
        out.reverse();
        out
    }

    fn max_abs_curvature(&self) -> f64 {
        self.inner.max_abs_curvature()
    }
}
