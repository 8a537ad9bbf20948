use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tractrix_cli::commands::{self, PeriodicArgs, DEFAULT_PENCIL};
use tractrix_cli::curves::CurveSpec;
use tractrix_cli::job::{Format, Settings, TraceJob};
use tractrix_cli::{figures, verify, write_file, CliError};

#[derive(Debug, Parser)]
#[command(name = "tractrix", version, about = "Tractrices of planar curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Type, finite length S1 and inflection s0 of a circle tractrix.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        w: Option<f64>,
        /// Curvature of the leading circle (w = K T).
        #[arg(long = "K", allow_hyphen_values = true)]
        k: Option<f64>,
        /// Leash length.
        #[arg(long = "T", allow_hyphen_values = true)]
        t: f64,
    },
    /// Trace one job given by flags and/or a config file.
    Trace(TraceArgs),
    /// Pencil of short-leash tractrices with their asymptotic circles.
    Pencil {
        #[arg(long = "T", default_value_t = 1.0)]
        t: f64,
        /// Shape parameters, comma separated, each in (-1, 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        w: Vec<f64>,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, default_value = "svg")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Periodic tractrix of a periodic leading curve.
    Periodic {
        #[arg(long)]
        curve: String,
        #[arg(long = "K", allow_hyphen_values = true)]
        k: Option<f64>,
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        nu0: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Iterate even when T breaks the contraction bound (push-pull mode).
        #[arg(long)]
        allow_beyond_bound: bool,
        #[arg(long)]
        step: Option<f64>,
        /// Write the one-period trace here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Run a verification suite: oracle, errata, pencil, inversion, periodic or all.
    Verify {
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate a figure analogue as SVG panels.
    Figure {
        /// fig2, fig4, fig5, fig6, fig7, fig8, fig9, fig11, fig12, fig13 or all.
        name: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct TraceArgs {
    /// Flat `key = value` job file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    curve: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w: Option<f64>,
    #[arg(long = "K", allow_hyphen_values = true)]
    k: Option<f64>,
    #[arg(long = "T", allow_hyphen_values = true)]
    t: Option<f64>,
    /// pull or pushpull.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu0: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Arc length: of the tractrix for closed forms, of the leading curve for the ODE.
    #[arg(long)]
    length: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    /// auto, closed or ode.
    #[arg(long)]
    engine: Option<String>,
    /// csv, svg or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl TraceArgs {
    fn settings(&self) -> Result<Settings, CliError> {
        let mut s = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        let flags = [
            ("curve", self.curve.clone()),
            ("w", self.w.map(|v| v.to_string())),
            ("K", self.k.map(|v| v.to_string())),
            ("T", self.t.map(|v| v.to_string())),
            ("mode", self.mode.clone()),
            ("nu0", self.nu0.map(|v| v.to_string())),
            ("samples", self.samples.map(|v| v.to_string())),
            ("length", self.length.map(|v| v.to_string())),
            ("step", self.step.map(|v| v.to_string())),
            ("engine", self.engine.clone()),
            ("format", self.format.clone()),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                s.set(k, &v)?;
            }
        }
        // w and K are alternatives; a flag replaces the other one from the file
        if self.w.is_some() && self.k.is_none() {
            s.remove("K");
        }
        if self.k.is_some() && self.w.is_none() {
            s.remove("w");
        }
        Ok(s)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_file(path, text)?;
            log::info!("wrote {}", path.display());
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify { w, k, t } => emit(&(commands::classify(w, k, t)? + "\n"), None),
        Command::Trace(args) => {
            let job = TraceJob::from_settings(&args.settings()?)?;
            emit(&commands::trace(&job)?, job.out.as_ref())
        }
        Command::Pencil {
            t,
            w,
            samples,
            format,
            out,
        } => {
            let ws = if w.is_empty() {
                DEFAULT_PENCIL.to_vec()
            } else {
                w
            };
            let text = commands::pencil(t, &ws, samples.max(2), format.parse::<Format>()?)?;
            emit(&text, out.as_ref())
        }
        Command::Periodic {
            curve,
            k,
            t,
            nu0,
            tol,
            allow_beyond_bound,
            step,
            out,
            format,
        } => {
            let format = format.parse::<Format>()?;
            let args = PeriodicArgs {
                curve: CurveSpec::parse(&curve)?,
                curvature: k,
                leash: t,
                nu0,
                tol,
                allow_beyond_bound,
                step,
            };
            let done = commands::periodic(&args)?;
            if let Some(path) = &out {
                let title = format!("periodic tractrix of {curve}, T={t}");
                emit(&commands::render(&done.traced, format, &title), Some(path))?;
            }
            emit(&done.summary, None)
        }
        Command::Verify { suite, out } => {
            let tol = verify::tolerance_override()?;
            let report = verify::run(&suite, tol)?;
            let text = serde_json::to_string_pretty(&report.to_json()).unwrap_or_default() + "\n";
            emit(&text, None)?;
            if let Some(path) = &out {
                emit(&text, Some(path))?;
            }
            if report.pass() {
                Ok(())
            } else {
                let failed: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| !c.pass())
                    .map(|c| c.name.clone())
                    .collect();
                Err(CliError::Verification(failed.join("; ")))
            }
        }
        Command::Figure { name, out } => {
            for path in figures::write(&name, &out)? {
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
