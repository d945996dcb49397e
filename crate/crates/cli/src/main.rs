//! `egregium`: curvature tables, intrinsic-curvature checks and
//! total-curvature integrals from the command line.
//!
//! Exit status is 0 on success, 2 for malformed input and 3 when the
//! computation itself fails.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "egregium", version, about = "Curvature of curves and surfaces, intrinsic and extrinsic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Point, unit frame and signed curvature along a plane curve.
    Curve(CurveArgs),
    /// Normal, first fundamental form and curvatures on a surface grid.
    Surface(SurfaceArgs),
    /// Curvature from E, F, G alone; compared with the embedding when one is given.
    Egregia(EgregiaArgs),
    /// Flatness residual of a metric and the resulting verdict.
    Flatness(FlatnessArgs),
    /// Total curvature over a chart rectangle.
    Gaussbonnet(GaussBonnetArgs),
    /// Angle excess and enclosed curvature of a geodesic triangle.
    Triangle(TriangleArgs),
    /// Integrates a single geodesic from a start point and direction.
    Geodesic(GeodesicArgs),
    /// Lists the built-in curves, surfaces and metrics.
    Catalog(CatalogArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Values substituted for named constants before parsing.
#[derive(Args, Debug, Clone, Default)]
struct Constants {
    /// Radius `R`.
    #[arg(long, allow_hyphen_values = true)]
    radius: Option<f64>,
    /// Centre-line radius `Rmaj` of the torus.
    #[arg(long = "Rmaj", allow_hyphen_values = true)]
    rmaj: Option<f64>,
    /// Tube radius `r` of the torus.
    #[arg(long = "r", allow_hyphen_values = true)]
    r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Any other constant, as NAME=VALUE; may be repeated.
    #[arg(long = "const", value_name = "NAME=VALUE")]
    extra: Vec<String>,
}

/// A surface given by name or by one of its three representations.
#[derive(Args, Debug, Clone, Default)]
struct SurfaceSource {
    #[arg(long)]
    catalog: Option<String>,
    /// Height function z = f(x, y).
    #[arg(long, allow_hyphen_values = true)]
    graph: Option<String>,
    /// Coordinates "x(p,q), y(p,q), z(p,q)".
    #[arg(long, allow_hyphen_values = true)]
    param: Option<String>,
    /// Level set W(x, y, z) = 0.
    #[arg(long, allow_hyphen_values = true)]
    implicit: Option<String>,
}

/// A metric, or a surface whose induced metric is used.
#[derive(Args, Debug, Clone, Default)]
struct MetricSource {
    #[command(flatten)]
    surface: SurfaceSource,
    /// Coefficients "E, F, G" as functions of u, v (or p, q).
    #[arg(long, allow_hyphen_values = true)]
    metric: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Chart {
    /// Range of the first coordinate, as a:b.
    #[arg(long = "range-u", allow_hyphen_values = true)]
    range_u: Option<String>,
    /// Range of the second coordinate, as a:b.
    #[arg(long = "range-v", allow_hyphen_values = true)]
    range_v: Option<String>,
    /// Samples per axis, as NxM.
    #[arg(long, default_value = "20x20")]
    grid: String,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long)]
    catalog: Option<String>,
    /// Graph y = f(x).
    #[arg(long, allow_hyphen_values = true)]
    graph: Option<String>,
    /// Coordinates "x(t), y(t)".
    #[arg(long, allow_hyphen_values = true)]
    param: Option<String>,
    /// Level set W(x, y) = 0, evaluated at --points.
    #[arg(long, allow_hyphen_values = true)]
    implicit: Option<String>,
    /// Points on the level set, as "x1,y1;x2,y2;...".
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Parameter or abscissa range, as a:b.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// Number of samples.
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[command(flatten)]
    constants: Constants,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    #[command(flatten)]
    source: SurfaceSource,
    #[command(flatten)]
    chart: Chart,
    #[command(flatten)]
    constants: Constants,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct EgregiaArgs {
    #[command(flatten)]
    source: MetricSource,
    /// Second catalog surface; runs the isometry and curvature comparison.
    #[arg(long)]
    other: Option<String>,
    /// Largest tolerated difference of E, F, G between the two surfaces.
    #[arg(long = "tol-metric", default_value_t = 1e-8)]
    tol_metric: f64,
    /// Largest tolerated curvature defect.
    #[arg(long = "tol-kappa", default_value_t = 1e-7)]
    tol_kappa: f64,
    #[command(flatten)]
    chart: Chart,
    #[command(flatten)]
    constants: Constants,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct FlatnessArgs {
    #[command(flatten)]
    source: MetricSource,
    /// Residual bound for the FLAT verdict.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    chart: Chart,
    #[command(flatten)]
    constants: Constants,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct GaussBonnetArgs {
    #[command(flatten)]
    source: MetricSource,
    #[arg(long = "range-u", allow_hyphen_values = true)]
    range_u: Option<String>,
    #[arg(long = "range-v", allow_hyphen_values = true)]
    range_v: Option<String>,
    /// Gauss-Legendre points per axis.
    #[arg(long, default_value_t = 24)]
    order: usize,
    /// Trim this much from both ends of the first coordinate range.
    #[arg(long, default_value_t = 0.0)]
    cutoff: f64,
    #[command(flatten)]
    constants: Constants,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct TriangleArgs {
    #[command(flatten)]
    source: MetricSource,
    /// First vertex, as u,v.
    #[arg(long, allow_hyphen_values = true)]
    v1: String,
    #[arg(long, allow_hyphen_values = true)]
    v2: String,
    #[arg(long, allow_hyphen_values = true)]
    v3: String,
    /// Shooting tolerance in the chart.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long = "max-iterations", default_value_t = 50)]
    max_iterations: usize,
    /// Integration step of each side.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    /// Subdivision level of the region integral.
    #[arg(long, default_value_t = 2)]
    order: usize,
    #[command(flatten)]
    constants: Constants,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct GeodesicArgs {
    #[command(flatten)]
    source: MetricSource,
    /// Start point, as u,v.
    #[arg(long, allow_hyphen_values = true)]
    start: String,
    /// Initial direction in the chart, as du,dv; rescaled to unit speed.
    #[arg(long, allow_hyphen_values = true)]
    dir: String,
    #[arg(long, default_value_t = 1.0)]
    length: f64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    /// Emit every k-th state only (the last state is always emitted).
    #[arg(long, default_value_t = 1)]
    every: usize,
    #[command(flatten)]
    constants: Constants,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    /// Only list entries of this kind.
    #[arg(long, value_parser = ["curve", "surface", "metric"])]
    kind: Option<String>,
    #[command(flatten)]
    out: Output,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
