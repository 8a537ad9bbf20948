//! Published polar equations known to be wrong, reproduced verbatim for
//! demonstration. Nothing in the tracing code calls into this module.
//!
//! The classical notation uses a circle of radius `a` and a leash of length
//! `l`; with a = R and l = T the long-leash case is a < l.

use crate::error::{Error, Result};

/// The published long-leash polar angle with the imaginary n replaced by
/// -sqrt(l^2 - a^2). Its first arctangent jumps from +pi/2 to -pi/2 at
/// t0 = sqrt((l + a)/(l - a)), tearing the curve apart.
pub fn loria_polar_erroneous(t: f64, a: f64, l: f64) -> Result<f64> {
    if !(a > 0.0 && l > a) {
        return Err(Error::Invalid(format!("needs 0 < a < l, got a={a}, l={l}")));
    }
    let n = -(l * l - a * a).sqrt();
    Ok((2.0 * l * t / ((a + l) + (a - l) * t * t)).atan()
        + 2.0 * l / n * (((l - a) / (l + a)).sqrt() * t).atan())
}

/// Parameter value where [`loria_polar_erroneous`] jumps.
pub fn loria_jump_point(a: f64, l: f64) -> f64 {
    ((l + a) / (l - a)).sqrt()
}

/// The spiral tractrix with arcsin in place of arccos.
pub fn spiral_polar_arcsin(p: f64, leash: f64) -> Result<f64> {
    if !(leash > 0.0 && p > 0.0 && p <= 2.0 * leash) {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
        });
    }
    Ok(-(p / (2.0 * leash)).asin() + (4.0 * leash * leash - p * p).sqrt() / p)
}
