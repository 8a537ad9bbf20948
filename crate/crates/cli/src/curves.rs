//! Leading-curve descriptors: `circle`, `line`, `ellipse:a=2,b=1`,
//! `sinusoid:amp=0.5,wavelength=6.28`, `lemniscate:a=2`,
//! `spiral:pitch=1,from=-6.28,to=3.14`, `parabola:c=0.5,x0=-2,x1=2`,
//! `square:side=1`, `polygon:n=5,radius=1`, or a path to a polyline file.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fs;
use std::path::{Path, PathBuf};

use tractrix_core::curve::{
    archimedean_spiral, ellipse, lemniscate, parabola, sinusoid, CircleCurve, LeadingCurve,
    Polyline,
};
use tractrix_core::{Point2, Pose};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    /// Leading circle of the w family; curvature comes from w or K.
    Circle,
    Line,
    Ellipse {
        a: f64,
        b: f64,
    },
    Sinusoid {
        amplitude: f64,
        wavelength: f64,
    },
    Lemniscate {
        a: f64,
    },
    Spiral {
        pitch: f64,
        from: f64,
        to: f64,
    },
    Parabola {
        c: f64,
        x0: f64,
        x1: f64,
    },
    Square {
        side: f64,
    },
    Polygon {
        n: usize,
        radius: f64,
    },
    File(PathBuf),
}

fn params(rest: &str) -> Result<BTreeMap<String, f64>, CliError> {
    let mut out = BTreeMap::new();
    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("curve parameter `{item}` is not key=value")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("curve parameter `{item}` is not a number")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

struct Params {
    name: &'static str,
    map: BTreeMap<String, f64>,
}

impl Params {
    fn get(&mut self, key: &str, default: f64) -> f64 {
        self.map.remove(key).unwrap_or(default)
    }

    fn finish(self) -> Result<(), CliError> {
        match self.map.keys().next() {
            Some(k) => Err(CliError::Usage(format!(
                "unknown parameter `{k}` for {}",
                self.name
            ))),
            None => Ok(()),
        }
    }
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<CurveSpec, CliError> {
        let text = text.trim();
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let known = [
            "circle",
            "line",
            "ellipse",
            "sinusoid",
            "lemniscate",
            "spiral",
            "archimedean-spiral",
            "parabola",
            "square",
            "polygon",
        ];
        if !known.contains(&name) {
            if Path::new(text).exists() || text.contains('/') || text.contains('.') {
                return Ok(CurveSpec::File(PathBuf::from(text)));
            }
            return Err(CliError::Usage(format!(
                "unknown curve `{text}` (expected one of {} or a polyline file)",
                known.join(", ")
            )));
        }
        let name: &'static str = known.iter().find(|k| **k == name).unwrap();
        let mut p = Params {
            name,
            map: params(rest)?,
        };
        let spec = match name {
            "circle" => CurveSpec::Circle,
            "line" => CurveSpec::Line,
            "ellipse" => CurveSpec::Ellipse {
                a: p.get("a", 2.0),
                b: p.get("b", 1.0),
            },
            "sinusoid" => CurveSpec::Sinusoid {
                amplitude: p.get("amp", 1.0),
                wavelength: p.get("wavelength", TAU),
            },
            "lemniscate" => CurveSpec::Lemniscate { a: p.get("a", 2.0) },
            "spiral" | "archimedean-spiral" => CurveSpec::Spiral {
                pitch: p.get("pitch", 1.0),
                from: p.get("from", -TAU),
                to: p.get("to", PI),
            },
            "parabola" => CurveSpec::Parabola {
                c: p.get("c", 0.5),
                x0: p.get("x0", -2.0),
                x1: p.get("x1", 2.0),
            },
            "square" => CurveSpec::Square {
                side: p.get("side", 1.0),
            },
            "polygon" => {
                let n = p.get("n", 5.0);
                if n.fract() != 0.0 || n < 3.0 {
                    return Err(CliError::Usage(format!(
                        "polygon needs an integer n >= 3, got {n}"
                    )));
                }
                CurveSpec::Polygon {
                    n: n as usize,
                    radius: p.get("radius", 1.0),
                }
            }
            _ => unreachable!(),
        };
        p.finish()?;
        Ok(spec)
    }

    pub fn is_circle_family(&self) -> bool {
        matches!(self, CurveSpec::Circle | CurveSpec::Line)
    }

    /// Builds the leading curve. Circles and lines need their curvature.
    pub fn build(&self, curvature: f64) -> Result<Box<dyn LeadingCurve>, CliError> {
        Ok(match *self {
            CurveSpec::Circle => Box::new(CircleCurve::canonical(curvature)),
            CurveSpec::Line => Box::new(CircleCurve::line(Pose::new(
                Point2::ORIGIN,
                std::f64::consts::FRAC_PI_2,
            ))),
            CurveSpec::Ellipse { a, b } => Box::new(ellipse(a, b)?),
            CurveSpec::Sinusoid {
                amplitude,
                wavelength,
            } => Box::new(sinusoid(amplitude, wavelength)?),
            CurveSpec::Lemniscate { a } => Box::new(lemniscate(a)?),
            CurveSpec::Spiral { pitch, from, to } => Box::new(archimedean_spiral(pitch, from, to)?),
            CurveSpec::Parabola { c, x0, x1 } => Box::new(parabola(c, x0, x1)?),
            CurveSpec::Square { side } => Box::new(Polyline::new(
                &regular_polygon(4, side / 2f64.sqrt(), PI / 4.0),
                true,
            )?),
            CurveSpec::Polygon { n, radius } => {
                Box::new(Polyline::new(&regular_polygon(n, radius, 0.0), true)?)
            }
            CurveSpec::File(ref path) => Box::new(read_polyline(path)?),
        })
    }

    pub fn describe(&self) -> String {
        match self {
            CurveSpec::Circle => "circle".into(),
            CurveSpec::Line => "line".into(),
            CurveSpec::Ellipse { a, b } => format!("ellipse:a={a},b={b}"),
            CurveSpec::Sinusoid {
                amplitude,
                wavelength,
            } => format!("sinusoid:amp={amplitude},wavelength={wavelength}"),
            CurveSpec::Lemniscate { a } => format!("lemniscate:a={a}"),
            CurveSpec::Spiral { pitch, from, to } => {
                format!("spiral:pitch={pitch},from={from},to={to}")
            }
            CurveSpec::Parabola { c, x0, x1 } => format!("parabola:c={c},x0={x0},x1={x1}"),
            CurveSpec::Square { side } => format!("square:side={side}"),
            CurveSpec::Polygon { n, radius } => format!("polygon:n={n},radius={radius}"),
            CurveSpec::File(p) => p.display().to_string(),
        }
    }
}

/// Vertices of a regular n-gon around the origin, counter-clockwise, the
/// first one at angle `phase + pi` shifted so that it sits at the origin.
pub fn regular_polygon(n: usize, radius: f64, phase: f64) -> Vec<Point2> {
    let first = Point2::polar(phase + PI) * radius;
    (0..n)
        .map(|i| Point2::polar(phase + PI + TAU * i as f64 / n as f64) * radius - first)
        .collect()
}

/// Whitespace- or comma-separated `x y` pairs, one per line; `#` starts a
/// comment. Repeating the first point at the end closes the polyline.
pub fn read_polyline(path: &Path) -> Result<Polyline, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut pts = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|_| {
                CliError::Usage(format!(
                    "{}:{}: `{s}` is not a number",
                    path.display(),
                    no + 1
                ))
            })
        };
        if nums.len() != 2 {
            return Err(CliError::Usage(format!(
                "{}:{}: expected two coordinates",
                path.display(),
                no + 1
            )));
        }
        pts.push(Point2::new(parse(nums[0])?, parse(nums[1])?));
    }
    let closed = pts.len() > 2 && pts.first() == pts.last();
    Ok(Polyline::new(&pts, closed)?)
}
