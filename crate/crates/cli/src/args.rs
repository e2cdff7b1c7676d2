use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use smarandache_core::smarandache::SmarandacheKind;

#[derive(Debug, Parser)]
#[command(
    name = "smarandache",
    version,
    about = "Bishop frames, Bishop-frame Smarandache curves and their spheres",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Number of samples (at least 64).
    #[arg(long, global = true, default_value_t = 2048)]
    pub n: usize,

    /// Initial Bishop angle θ0 in radians.
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta0: f64,

    /// Output file, or directory for commands that write several files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Exit with status 4 when any comparison exceeds its tolerance.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Plot view as `azimuth,elevation` in degrees.
    #[arg(long, global = true, default_value = "30,20", value_parser = parse_view, allow_hyphen_values = true)]
    pub view: View,

    /// Parameter interval `a:b`.
    #[arg(long = "t-range", global = true, value_parser = parse_range, allow_hyphen_values = true)]
    pub t_range: Option<(f64, f64)>,

    /// Curve given as three expressions in `t`: "x; y; z".
    #[arg(long, global = true, conflicts_with_all = ["curve", "csv"])]
    pub expr: Option<String>,

    /// Built-in curve.
    #[arg(long, global = true, value_enum, conflicts_with = "csv")]
    pub curve: Option<CurveName>,

    /// Curve samples in a CSV file with header `t,x,y,z`.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,

    /// Circle radius.
    #[arg(long = "R", global = true, default_value_t = 1.0)]
    pub radius: f64,

    /// Helix radius.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub a: f64,

    /// Helix pitch (rise per radian).
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,

    /// Salkowski parameter.
    #[arg(long, global = true, default_value_t = 3f64.sqrt())]
    pub m: f64,

    /// Variable of integration for θ of the Smarandache curve: its own arc
    /// length (`s-star`) or that of the base curve (`s`).
    #[arg(long = "theta-beta-wrt", global = true, value_enum, default_value = "s-star")]
    pub theta_beta_wrt: ThetaWrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveName {
    Salkowski,
    Circle,
    Helix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThetaWrt {
    #[value(name = "s-star")]
    SStar,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct View {
    pub azimuth: f64,
    pub elevation: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the Bishop frame of the curve as CSV.
    Frames,
    /// Build Smarandache curves and write their samples and invariants.
    Smarandache(SmarandacheArgs),
    /// Curvature and osculating spheres at one sample, as JSON.
    Spheres(SpheresArgs),
    /// Render a curve as SVG.
    Plot(PlotArgs),
    /// Run the closed-form versus oracle comparisons and frame checks.
    Verify,
}

#[derive(Debug, Args)]
pub struct SmarandacheArgs {
    /// tn1, tn2, n1n2, tn1n2 or all.
    #[arg(long, value_parser = parse_kinds)]
    pub kind: KindSelection,

    /// Also write the comparison against the numeric oracle.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct SpheresArgs {
    /// tn1, tn2, n1n2, tn1n2, or base for the input curve itself.
    #[arg(long, value_parser = parse_target)]
    pub kind: Target,

    /// Sample index on the arc-length grid of the chosen curve.
    #[arg(long, conflicts_with = "s_star")]
    pub index: Option<usize>,

    /// Arc length on the chosen curve; the nearest sample is used.
    #[arg(long = "s-star", allow_negative_numbers = true)]
    pub s_star: Option<f64>,

    /// Curvature-sphere radius (default: twice the minimum).
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Curve CSV to plot instead of the pipeline output.
    #[arg(long, conflicts_with = "kind")]
    pub input: Option<PathBuf>,

    /// Smarandache curve to plot (tn1 .. tn1n2, all, or base). With `all`,
    /// `--out` names a directory.
    #[arg(long, value_parser = parse_plot_kind)]
    pub kind: Option<PlotKind>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KindSelection(pub Vec<SmarandacheKind>);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Base,
    Kind(SmarandacheKind),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlotKind {
    Base,
    Kinds(Vec<SmarandacheKind>, bool),
}

fn parse_kinds(s: &str) -> Result<KindSelection, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(KindSelection(SmarandacheKind::ALL.to_vec()));
    }
    s.parse().map(|k| KindSelection(vec![k]))
}

fn parse_target(s: &str) -> Result<Target, String> {
    if s.eq_ignore_ascii_case("base") {
        return Ok(Target::Base);
    }
    s.parse().map(Target::Kind)
}

fn parse_plot_kind(s: &str) -> Result<PlotKind, String> {
    if s.eq_ignore_ascii_case("base") {
        return Ok(PlotKind::Base);
    }
    if s.eq_ignore_ascii_case("all") {
        return Ok(PlotKind::Kinds(SmarandacheKind::ALL.to_vec(), true));
    }
    s.parse().map(|k| PlotKind::Kinds(vec![k], false))
}

fn parse_number(s: &str, what: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("invalid {what} `{s}`"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{what} must be finite"))
    }
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected `a:b`, got `{s}`"))?;
    let (a, b) = (parse_number(a, "range start")?, parse_number(b, "range end")?);
    if b > a {
        Ok((a, b))
    } else {
        Err(format!("range end {b} must exceed start {a}"))
    }
}

pub fn parse_view(s: &str) -> Result<View, String> {
    let (a, e) = s.split_once(',').ok_or_else(|| format!("expected `azimuth,elevation`, got `{s}`"))?;
    let (azimuth, elevation) = (parse_number(a, "azimuth")?, parse_number(e, "elevation")?);
    if !(0.0..360.0).contains(&azimuth) {
        return Err(format!("azimuth {azimuth} outside [0, 360)"));
    }
    if !(-90.0..=90.0).contains(&elevation) {
        return Err(format!("elevation {elevation} outside [-90, 90]"));
    }
    Ok(View { azimuth, elevation })
}
