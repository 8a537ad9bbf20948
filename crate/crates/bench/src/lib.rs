//! Fixtures shared by the criterion benches in `benches/`.

use std::f64::consts::PI;

use tractrix_core::curve::{archimedean_spiral, ellipse, LeadingCurve, ParametricCurve};
use tractrix_core::geometry::normalize_angle;
use tractrix_core::periodic::contraction_bound;
use tractrix_core::{IntegratorConfig, LeashParams, Mode};

/// One representative per circle-tractrix class, T = 1.
pub const CLASS_W: [(&str, f64); 5] = [
    ("T1", 3.0),
    ("T2", 1.0),
    ("T3", 0.5),
    ("T4", 0.0),
    ("T5", -0.5),
];

pub fn circle_params(w: f64) -> LeashParams {
    LeashParams::new(w, 1.0).expect("valid shape parameter")
}

/// 2 x 1 ellipse with a leash at `frac` of its contraction bound.
pub fn ellipse_with_leash(frac: f64) -> (ParametricCurve, f64) {
    let curve = ellipse(2.0, 1.0).expect("valid ellipse");
    let leash = frac * contraction_bound(&curve);
    (curve, leash)
}

/// Archimedean spiral of unit pitch over [-2 pi, pi] with the push-pull
/// configuration whose post-cusp branch is the circle involute.
pub fn spiral_push_pull(step: f64) -> (ParametricCurve, IntegratorConfig) {
    let (a0, a1) = (-2.0 * PI, PI);
    let spiral = archimedean_spiral(1.0, a0, a1).expect("valid spiral");
    let theta0 = spiral.sample(0.0).theta;
    let tau0 = (-a0.cos()).atan2(a0.sin());
    let nu0 = normalize_angle(theta0 - tau0).expect("finite angle");
    let cfg = IntegratorConfig::new(1.0, spiral.total_length())
        .with_mode(Mode::PushPull)
        .with_nu0(nu0)
        .with_step(step);
    (spiral, cfg)
}
