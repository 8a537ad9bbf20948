//! Tractrices: the path of a point dragged on a taut leash of length T by a
//! point moving along a leading curve.
//!
//! - [`circle`]: closed forms for leading circles and lines (the w family).
//! - [`ode`]: the leash-angle equation for arbitrary leading curves, with
//!   corner impulses, slack stops and push-pull cusps.
//! - [`periodic`]: periodic tractrices of periodic leading curves.
//! - [`inversion`]: asymptotic-circle pencil, inversions and orthogonality.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod circle;
pub mod curve;
pub mod error;
pub mod geometry;
pub mod inversion;
pub mod numeric;
pub mod ode;
pub mod periodic;

pub use circle::{classify, trace_cartesian, Branch, CircleTractrix, LeashParams, TractrixClass};
pub use curve::{Chain, CircleCurve, LeadingCurve, ParametricCurve, Polyline};
pub use error::{Error, Result};
pub use geometry::{Point2, Pose, Rigid2, SwitchKind, Termination, Trace, TraceSample};
pub use inversion::{apply_inversion, InversionSpec, PencilSpec};
pub use ode::{integrate_nu, IntegratorConfig, Mode};
pub use periodic::{find_periodic, PeriodicConfig, PeriodicSolution};
