//! Trace jobs assembled from a flat `key = value` config file and flags.
//! Flags override the file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use tractrix_core::Mode;

use crate::curves::CurveSpec;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Usage(format!(
                "unknown format `{s}` (csv, svg, json)"
            ))),
        }
    }
}

/// Which solver produces the trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Closed form for circles and lines, the ODE otherwise.
    Auto,
    Closed,
    Ode,
}

impl FromStr for Engine {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "auto" => Ok(Engine::Auto),
            "closed" => Ok(Engine::Closed),
            "ode" => Ok(Engine::Ode),
            _ => Err(CliError::Usage(format!(
                "unknown engine `{s}` (auto, closed, ode)"
            ))),
        }
    }
}

pub fn parse_mode(s: &str) -> Result<Mode, CliError> {
    match s {
        "pull" => Ok(Mode::PullOnly),
        "pushpull" | "push-pull" => Ok(Mode::PushPull),
        _ => Err(CliError::Usage(format!(
            "unknown mode `{s}` (pull, pushpull)"
        ))),
    }
}

pub const KEYS: [&str; 12] = [
    "curve", "T", "w", "K", "mode", "nu0", "samples", "length", "engine", "format", "out", "step",
];

/// Ordered key/value settings; later entries win.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    entries: Vec<(String, String)>,
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", no + 1))
            })?;
            s.set(k.trim(), v.trim())?;
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        if !KEYS.contains(&key) {
            return Err(CliError::Usage(format!(
                "unknown key `{key}` (known: {})",
                KEYS.join(", ")
            )));
        }
        self.entries.retain(|(k, _)| k != key);
        self.entries.push((key.to_string(), value.to_string()));
        Ok(())
    }

    pub fn remove(&mut self, key: &str) {
        self.entries.retain(|(k, _)| k != key);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn number(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("`{key}` must be a number, got `{v}`")))
            })
            .transpose()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceJob {
    pub curve: CurveSpec,
    pub leash: f64,
    pub w: Option<f64>,
    pub curvature: Option<f64>,
    pub mode: Mode,
    pub nu0: Option<f64>,
    pub samples: usize,
    /// Tractrix arc length for closed forms, leading arc length for the ODE.
    pub length: Option<f64>,
    pub step: Option<f64>,
    pub engine: Engine,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl TraceJob {
    pub fn from_settings(s: &Settings) -> Result<Self, CliError> {
        let w = s.number("w")?;
        let curvature = s.number("K")?;
        let curve = match s.get("curve") {
            Some(c) => CurveSpec::parse(c)?,
            None if w.is_some() || curvature.is_some() => CurveSpec::Circle,
            None => {
                return Err(CliError::Usage(
                    "no curve given (--curve, --w or --K)".into(),
                ))
            }
        };
        if w.is_some() && curvature.is_some() {
            return Err(CliError::Usage("give either w or K, not both".into()));
        }
        if curve == CurveSpec::Circle && w.is_none() && curvature.is_none() {
            return Err(CliError::Usage("a circle needs w or K".into()));
        }
        if !curve.is_circle_family() && (w.is_some() || curvature.is_some()) {
            return Err(CliError::Usage(format!(
                "w and K describe circles; curve is {}",
                curve.describe()
            )));
        }
        let leash = s
            .number("T")?
            .ok_or_else(|| CliError::Usage("missing leash length T".into()))?;
        let samples = match s.get("samples") {
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("samples must be an integer, got `{v}`")))?,
            None => 400,
        };
        if samples < 2 {
            return Err(CliError::Usage("samples must be at least 2".into()));
        }
        let length = s.number("length")?;
        if let Some(l) = length {
            if !(l > 0.0) {
                return Err(CliError::Usage(format!("length must be positive, got {l}")));
            }
        }
        Ok(TraceJob {
            curve,
            leash,
            w,
            curvature,
            mode: s.get("mode").map_or(Ok(Mode::PullOnly), parse_mode)?,
            nu0: s.number("nu0")?,
            samples,
            length,
            step: s.number("step")?,
            engine: s.get("engine").map_or(Ok(Engine::Auto), str::parse)?,
            format: s.get("format").map_or(Ok(Format::Csv), str::parse)?,
            out: s.get("out").map(PathBuf::from),
        })
    }
}
