use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use freefall::expr::{parse_metric_spec, MetricSpec};
use freefall::geometry::{connection_csv, FdStep, FrameField, GeometryError, Point};
use freefall::lingrav::{gauge_orbit_check_with, Coupling, GaugeTolerances};
use freefall::metrics;
use freefall::thermal::{
    schwarzschild_radius, spectrum_csv, spectrum_sweep, temperature_profile, ChirpParams,
    PhysicalConstants, QuadControls,
};

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const DOMAIN: i32 = 3;
    pub const RESIDUAL: i32 = 4;
    pub const CONVERGENCE: i32 = 5;
    pub const PROPERTY: i32 = 6;
}

#[derive(Debug, Parser)]
#[command(
    name = "freefall",
    version,
    about = "Local frames, spin-2 gauge identities and the Unruh spectrum"
)]
pub struct Cli {
    /// Unit system for physical constants
    #[arg(long, value_enum, default_value_t = Units::Si, global = true)]
    pub units: Units,
    /// Output file (default: standard output)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Si,
    Natural,
}

impl Units {
    fn constants(self) -> PhysicalConstants {
        match self {
            Units::Si => PhysicalConstants::si(),
            Units::Natural => PhysicalConstants::natural(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vierbein, anholonomity, spin connection and Christoffel symbols at a point
    Frames(FramesArgs),
    /// Doppler-chirp power spectrum against the Planck factor
    Spectrum(SpectrumArgs),
    /// Unruh temperature profile around a mass
    Temps(TempsArgs),
    /// Randomized gauge identities of the spin-2 kinetic operator
    GaugeCheck(GaugeArgs),
    /// Metric spec utilities
    Metric {
        #[command(subcommand)]
        action: MetricAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum MetricAction {
    /// Print the spec text of a built-in metric
    Print {
        #[arg(long)]
        metric: String,
    },
}

#[derive(Debug, Args)]
pub struct FramesArgs {
    /// Built-in metric name or path to a metric spec file
    #[arg(long)]
    pub metric: String,
    /// Parameter override, NAME=VALUE (repeatable)
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    /// Coordinates, comma separated, angles in radians
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        num_args = 1
    )]
    pub point: Vec<f64>,
    /// Relative finite-difference step
    #[arg(long, default_value_t = freefall::geometry::DEFAULT_RELATIVE_STEP)]
    pub step: f64,
    /// Largest accepted tetrad-postulate residual
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Proper acceleration (default 1)
    #[arg(long)]
    pub a: Option<f64>,
    /// Emitted frequency (default 1)
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub xmin: f64,
    #[arg(long, default_value_t = 5.0)]
    pub xmax: f64,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    /// Series/quadrature split point
    #[arg(long, default_value_t = 0.05)]
    pub split: f64,
    #[arg(long, default_value_t = 25)]
    pub series_terms: usize,
    #[arg(long, default_value_t = 4000)]
    pub max_intervals: usize,
}

#[derive(Debug, Args)]
pub struct TempsArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub mass: f64,
    /// Smallest radius (default r_S)
    #[arg(long)]
    pub rmin: Option<f64>,
    /// Largest radius (default 10 r_S)
    #[arg(long)]
    pub rmax: Option<f64>,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct GaugeArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Multiply every tolerance by this factor
    #[arg(long, default_value_t = 1.0)]
    pub tol_scale: f64,
}

/// Outcome of a subcommand: exit code, payload for `--out`, diagnostics.
pub struct Outcome {
    pub code: i32,
    pub output: Option<String>,
    pub message: Option<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            code: exit::OK,
            output: Some(output),
            message: None,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        Outcome {
            code,
            output: None,
            message: Some(message.into()),
        }
    }

    fn partial(code: i32, output: String, message: impl Into<String>) -> Self {
        Outcome {
            code,
            output: Some(output),
            message: Some(message.into()),
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Frames(args) => cmd_frames(args),
        Command::Spectrum(args) => cmd_spectrum(args, cli.units),
        Command::Temps(args) => cmd_temps(args, cli.units),
        Command::GaugeCheck(args) => cmd_gauge_check(args, cli.units),
        Command::Metric {
            action: MetricAction::Print { metric },
        } => match metrics::builtin_source(metric) {
            Some(text) => Outcome::ok(text.to_string()),
            None => Outcome::fail(exit::USAGE, format!("unknown built-in metric `{metric}`")),
        },
    }
}

fn load_metric(source: &str, overrides: &[String]) -> Result<MetricSpec, String> {
    let mut spec = match metrics::builtin(source) {
        Some(parsed) => parsed.map_err(|e| e.to_string())?,
        None => {
            let text = std::fs::read_to_string(source).map_err(|e| {
                format!("`{source}` is neither a built-in metric nor a readable file: {e}")
            })?;
            parse_metric_spec(&text).map_err(|e| format!("{source}: {e}"))?
        }
    };
    for item in overrides {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("--set expects NAME=VALUE, got `{item}`"))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("--set {name}: `{value}` is not a number"))?;
        spec.set_param(name.trim(), value)
            .map_err(|e| e.to_string())?;
    }
    Ok(spec)
}

fn cmd_frames(args: &FramesArgs) -> Outcome {
    let spec = match load_metric(&args.metric, &args.set) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(exit::USAGE, e),
    };
    let Ok(coords) = <[f64; 4]>::try_from(args.point.as_slice()) else {
        return Outcome::fail(
            exit::USAGE,
            format!("--point needs 4 coordinates, got {}", args.point.len()),
        );
    };
    let point = match Point::new(coords) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(exit::USAGE, e.to_string()),
    };
    let frame = match FrameField::with_step(spec, FdStep::Relative(args.step)) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(exit::USAGE, e.to_string()),
    };
    let bundle = match frame.connection_at(&point) {
        Ok(b) => b,
        Err(e @ (GeometryError::NonFinitePoint(_) | GeometryError::BadStep)) => {
            return Outcome::fail(exit::USAGE, e.to_string())
        }
        Err(e) => return Outcome::fail(exit::DOMAIN, e.to_string()),
    };
    let dump = connection_csv(frame.spec(), &bundle);
    if bundle.residual > args.tolerance {
        return Outcome::partial(
            exit::RESIDUAL,
            dump,
            format!(
                "tetrad-postulate residual {:e} exceeds {:e}",
                bundle.residual, args.tolerance
            ),
        );
    }
    Outcome::ok(dump)
}

/// Acceptance thresholds for each spectrum row.
const QUAD_TOLERANCE: f64 = 1e-6;
const IDENTITY_TOLERANCE: f64 = 1e-10;

fn cmd_spectrum(args: &SpectrumArgs, units: Units) -> Outcome {
    let k = units.constants();
    let params = match ChirpParams::new(args.omega.unwrap_or(1.0), args.a.unwrap_or(1.0), k.c) {
        Ok(p) => p,
        Err(e) => return Outcome::fail(exit::USAGE, e.to_string()),
    };
    let ctrl = QuadControls {
        split: args.split,
        series_terms: args.series_terms,
        max_intervals: args.max_intervals,
        ..QuadControls::default()
    };
    let rows = match spectrum_sweep(&params, args.xmin, args.xmax, args.steps, &ctrl) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(exit::USAGE, e.to_string()),
    };
    let csv = spectrum_csv(&rows);
    if let Some(row) = rows.iter().find(|r| r.numeric.is_err()) {
        let err = row
            .numeric
            .as_ref()
            .err()
            .map(|e| e.to_string())
            .unwrap_or_default();
        return Outcome::partial(exit::CONVERGENCE, csv, format!("x = {}: {err}", row.x));
    }
    if let Some(s) = rows
        .iter()
        .filter_map(|r| r.sample())
        .find(|s| s.rel_err_quad > QUAD_TOLERANCE || s.identity_err > IDENTITY_TOLERANCE)
    {
        return Outcome::partial(
            exit::CONVERGENCE,
            csv,
            format!(
                "x = {}: rel_err_quad {:e}, identity_err {:e}",
                s.x, s.rel_err_quad, s.identity_err
            ),
        );
    }
    Outcome::ok(csv)
}

fn cmd_temps(args: &TempsArgs, units: Units) -> Outcome {
    let k = units.constants();
    let rs = match schwarzschild_radius(args.mass, &k) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(exit::USAGE, e.to_string()),
    };
    let rmin = args.rmin.unwrap_or(rs);
    let rmax = args.rmax.unwrap_or(10.0 * rs);
    match temperature_profile(args.mass, rmin, rmax, args.steps, &k) {
        Ok(profile) => Outcome::ok(profile.to_csv()),
        Err(e) => Outcome::fail(exit::USAGE, e.to_string()),
    }
}

fn cmd_gauge_check(args: &GaugeArgs, units: Units) -> Outcome {
    if args.trials == 0 {
        return Outcome::fail(exit::USAGE, "--trials must be at least 1");
    }
    if !(args.tol_scale.is_finite() && args.tol_scale >= 0.0) {
        return Outcome::fail(exit::USAGE, "--tol-scale must be a non-negative number");
    }
    let coupling = Coupling::from_constants(&units.constants());
    let tol = GaugeTolerances::default().scaled(args.tol_scale);
    let report = match gauge_orbit_check_with(args.trials, args.seed, &coupling, &tol) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(exit::USAGE, e.to_string()),
    };
    let csv = report.to_csv();
    match report.first_failure() {
        None => Outcome::ok(csv),
        Some(f) => Outcome::partial(
            exit::PROPERTY,
            csv,
            format!(
                "{} of {} trials failed; first: --seed {} trial {} (residual_gauge {:e}, residual_bianchi {:e})",
                report.failed(),
                args.trials,
                args.seed,
                f.trial,
                f.residual_gauge,
                f.residual_bianchi
            ),
        ),
    }
}
