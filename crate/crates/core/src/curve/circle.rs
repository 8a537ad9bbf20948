use std::f64::consts::{FRAC_PI_2, TAU};

use super::{CurveSample, LeadingCurve, Period};
use crate::geometry::{Point2, Pose};
use crate::numeric::sinc;

/// Circle of signed curvature `curvature` (a line when zero), starting at
/// `start` and traversed counter-clockwise for positive curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleCurve {
    pub start: Point2,
    pub theta0: f64,
    pub curvature: f64,
}

impl CircleCurve {
    pub fn new(start: Pose, curvature: f64) -> Self {
        CircleCurve {
            start: start.position,
            theta0: start.tangent_angle,
            curvature,
        }
    }

    /// The leading curve of the closed forms: from the origin heading along +y.
    pub fn canonical(curvature: f64) -> Self {
        CircleCurve {
            start: Point2::ORIGIN,
            theta0: FRAC_PI_2,
            curvature,
        }
    }

    pub fn line(start: Pose) -> Self {
        Self::new(start, 0.0)
    }

    /// Center of the circle, `None` for a line.
    pub fn center(&self) -> Option<Point2> {
        (self.curvature != 0.0)
            .then(|| self.start + Point2::polar(self.theta0 + FRAC_PI_2) * (1.0 / self.curvature))
    }
}

impl LeadingCurve for CircleCurve {
    fn sample(&self, l: f64) -> CurveSample {
        let k = self.curvature;
        let half = 0.5 * k * l;
        // chord of length l*sinc(kl/2) along the mid-arc direction
        let chord = l * sinc(half);
        let dir = self.theta0 + half;
        CurveSample {
            point: self.start + Point2::polar(dir) * chord,
            theta: self.theta0 + k * l,
            curvature: k,
        }
    }

    fn length(&self) -> Option<f64> {
        None
    }

    fn period(&self) -> Option<Period> {
        (self.curvature != 0.0).then(|| Period {
            length: TAU / self.curvature.abs(),
            shift: Point2::ORIGIN,
            turn: TAU * self.curvature.signum(),
        })
    }

    fn max_abs_curvature(&self) -> f64 {
        self.curvature.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::tests::check_arc_length_form;
    use approx::assert_abs_diff_eq;

    #[test]
    fn canonical_circle_matches_closed_form() {
        let k = 0.5;
        let c = CircleCurve::canonical(k);
        for l in [0.0, 0.3, 2.0, 7.0] {
            let p = c.sample(l).point;
            assert_abs_diff_eq!(p.x, ((k * l).cos() - 1.0) / k, epsilon = 1e-14);
            assert_abs_diff_eq!(p.y, (k * l).sin() / k, epsilon = 1e-14);
        }
        let ctr = c.center().unwrap();
        assert_abs_diff_eq!(ctr.x, -2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ctr.y, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn arc_length_form() {
        check_arc_length_form(
            &CircleCurve::new(Pose::new(Point2::new(1.0, 2.0), 0.3), -0.7),
            &[0.1, 1.0, 5.0],
            1e-4,
            1e-7,
        );
        check_arc_length_form(&CircleCurve::canonical(0.0), &[0.1, 3.0], 1e-4, 1e-9);
    }
}
