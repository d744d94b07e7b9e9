//! Command-line front end for `reaper-core`.
//!
//! Exit codes: 0 when every invoked check passes, 1 on a numerical failure,
//! 2 on a usage or schema error.

pub mod artifacts;
pub mod config;
pub mod surface;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use reaper_core::catalog::{ChartDomain, ImmersedPatch, PatchSpec, ReaperParams, SurfaceKind};
use reaper_core::checks::{self, NamedPatch, Suite, SuiteConfig};
use reaper_core::diffgeo::{sample, sample_grid, write_samples_csv, SurfaceSample};
use reaper_core::fields::LinearField;
use reaper_core::foliation::{equidistant_point, symmetric_t_grid, verify_foliation, write_foliation_csv, FoliationBox};
use reaper_core::grid::{GridSpec, Quadrature, Spacing};
use reaper_core::ilmanen::write_trajectory_csv;
use reaper_core::measures::{
    entropy_estimate, extrinsic_volume_ratio, f_functional, intrinsic_volume_growth, stability_form, BumpFunction,
};
use reaper_core::report::CheckReport;
use reaper_core::Vec3;
use serde::Serialize;
use serde_json::json;

use artifacts::{emit, render_table, to_json_bytes, write_check_artifacts, CheckArtifact, SCHEMA_VERSION};
use surface::{parse_list, parse_vec3, SurfaceArgs};

#[derive(Debug, Parser)]
#[command(name = "reaper", version, about = "Numerical checks for translating solitons")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the built-in surface catalog as JSON.
    Catalog(CatalogArgs),
    /// Sample a surface on a grid.
    Sample(SampleArgs),
    /// Run check suites and write one JSON report per check.
    Check(CheckArgs),
    /// Integrate a geodesic of the conformal metric.
    Geodesic(GeodesicArgs),
    /// Export equidistant leaves.
    Equidistant(EquidistantArgs),
    /// Evaluate a Gaussian-area, volume-growth or stability measure.
    Measure(MeasureArgs),
    /// Summarize a directory of check reports.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, default_value = "40x40")]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, default_value = "40x40")]
    pub grid: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Geodesic integration step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Tolerance override for single-surface checks.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Directory for `<check>.json` artifacts.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    /// Initial direction; rescaled to conformal unit speed.
    #[arg(long, allow_hyphen_values = true)]
    pub dir: String,
    /// Final time.
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EquidistantArgs {
    /// Comma-separated distances.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["leaves", "t_max"])]
    pub t_values: Option<String>,
    /// Number of leaves on a symmetric grid.
    #[arg(long)]
    pub leaves: Option<usize>,
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Base surface; without it the leaves of the plane `{x1 = 0}` are exported.
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, default_value = "40x40")]
    pub grid: String,
    /// Also verify disjointness, monotonicity and coverage of the plane family.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 0.05)]
    pub density: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for check artifacts when `--check` is given.
    #[arg(long)]
    pub report_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    F,
    Entropy,
    Extrinsic,
    Intrinsic,
    Stability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Uniform,
    Graded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightArg {
    None,
    X3,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long, value_enum)]
    pub measure: MeasureKind,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, default_value = "40x40")]
    pub grid: String,
    /// `midpoint` or `gauss-legendre-<k>`.
    #[arg(long, default_value = "gauss-legendre-4")]
    pub quadrature: String,
    #[arg(long, value_enum, default_value_t = SpacingArg::Uniform)]
    pub spacing: SpacingArg,
    /// Gaussian center `x,y,z`; for `entropy`, several separated by `;`.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0,0")]
    pub x0: String,
    /// Gaussian scale; for `entropy`, a comma-separated list.
    #[arg(long, default_value = "1")]
    pub t0: String,
    /// Radii for volume growth.
    #[arg(long, default_value = "2,4,6,8")]
    pub radii: String,
    /// Chart point `u,v` for intrinsic balls and bump centers.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
    pub origin: String,
    #[arg(long, value_enum, default_value_t = WeightArg::None)]
    pub weight: WeightArg,
    #[arg(long, default_value_t = 1.0)]
    pub bump_radius: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub bump_amplitude: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub dir: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Error carrying an exit code.
#[derive(Debug)]
pub struct Exit {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    Exit {
        code: 2,
        message: message.into(),
    }
    .into()
}

/// Exit code for an error: 2 for bad input, 1 for anything numerical.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if let Some(e) = err.downcast_ref::<Exit>() {
        return e.code;
    }
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<reaper_core::Error>() {
            return match e {
                reaper_core::Error::InvalidParameter { .. }
                | reaper_core::Error::InvalidDomain(_)
                | reaper_core::Error::OutsideDomain { .. }
                | reaper_core::Error::OutsideSlab { .. }
                | reaper_core::Error::NonUnitSpeed { .. }
                | reaper_core::Error::DegenerateFit(_)
                | reaper_core::Error::Reach { .. }
                | reaper_core::Error::TestFunctionSupport { .. } => 2,
                _ => 1,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() || cause.downcast_ref::<serde_json::Error>().is_some() {
            return 2;
        }
    }
    1
}

/// Parses arguments (after expanding `--config`), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::splice(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

pub fn main() -> ! {
    std::process::exit(main_with_args(std::env::args_os()))
}

/// Executes a parsed command; `Ok` carries the exit code (0 or 1).
pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Catalog(a) => run_catalog(a),
        Command::Sample(a) => run_sample(a),
        Command::Check(a) => run_check(a),
        Command::Geodesic(a) => run_geodesic(a),
        Command::Equidistant(a) => run_equidistant(a),
        Command::Measure(a) => run_measure(a),
        Command::Report(a) => run_report(a),
    }
}

fn parse_grid(s: &str) -> Result<GridSpec> {
    s.parse::<GridSpec>().map_err(|e| usage(e.to_string()))
}

fn require_finite(field: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("{field}: must be finite, got {x}")))
    }
}

fn build_surface(args: &SurfaceArgs) -> Result<Option<(PatchSpec, ImmersedPatch)>> {
    let Some(name) = args.surface else {
        return Ok(None);
    };
    let spec = args.spec(name).map_err(|e| usage(format!("{e:#}")))?;
    let patch = spec.build().map_err(|e| usage(format!("surface: {e}")))?;
    Ok(Some((spec, patch)))
}

fn require_surface(args: &SurfaceArgs) -> Result<(PatchSpec, ImmersedPatch)> {
    build_surface(args)?.ok_or_else(|| usage("surface: `--surface` is required for this command"))
}

fn run_catalog(a: &CatalogArgs) -> Result<i32> {
    let specs: Vec<PatchSpec> = match build_surface(&a.surface)? {
        Some((spec, _)) => vec![spec],
        None => {
            let mut v: Vec<PatchSpec> = checks::catalog_translators()?.iter().map(|np| *np.patch.spec()).collect();
            v.push(*checks::bowl_patch()?.spec());
            v
        }
    };
    let doc = json!({ "schema_version": SCHEMA_VERSION, "kind": "catalog", "surfaces": specs });
    emit(a.out.as_deref(), &to_json_bytes(&doc)?)?;
    Ok(0)
}

fn run_sample(a: &SampleArgs) -> Result<i32> {
    let (spec, patch) = require_surface(&a.surface)?;
    let grid = parse_grid(&a.grid)?;
    let samples: Vec<SurfaceSample> = sample_grid(&patch, &grid).into_iter().collect::<reaper_core::Result<_>>()?;
    let bytes = match a.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_samples_csv(&mut buf, &samples)?;
            buf
        }
        Format::Json => {
            let rows: Vec<_> = samples
                .iter()
                .map(|s| {
                    json!({
                        "u": s.u, "v": s.v,
                        "position": [s.position.x, s.position.y, s.position.z],
                        "normal": [s.normal.x, s.normal.y, s.normal.z],
                        "mean_curvature": s.mean_curvature,
                    })
                })
                .collect();
            to_json_bytes(&json!({
                "schema_version": SCHEMA_VERSION,
                "kind": "samples",
                "surface": spec,
                "grid": grid.describe(),
                "samples": rows,
            }))?
        }
    };
    emit(a.out.as_deref(), &bytes)?;
    Ok(0)
}

fn surface_label(spec: &PatchSpec) -> String {
    match spec.kind {
        SurfaceKind::VerticalPlane { x1, angle } => format!("vertical-plane x1={x1} angle={angle}"),
        SurfaceKind::ReaperLevelSet { lambda, alpha, level_c } => {
            format!("reaper-level-set lambda={lambda} alpha={alpha} c={level_c}")
        }
        SurfaceKind::PlaneFamily { t } => format!("plane-family t={t}"),
        SurfaceKind::BowlSoliton { radius_max, .. } => format!("bowl-soliton R={radius_max}"),
        SurfaceKind::ParabolicCylinder { a } => format!("parabolic-cylinder a={a}"),
        SurfaceKind::GrimReaper {} => "grim-reaper".to_string(),
    }
}

fn single_surface_checks(a: &CheckArgs, suite: Suite, cfg: &SuiteConfig, spec: PatchSpec, patch: ImmersedPatch) -> Result<Vec<CheckReport>> {
    let tol = &cfg.tolerances;
    let np = NamedPatch {
        label: surface_label(&spec),
        patch,
    };
    let grid = &cfg.grid;
    Ok(match suite {
        Suite::Translator => {
            let (name, default_tol) = match spec.kind {
                SurfaceKind::VerticalPlane { .. } => ("translator-residual-planes", 0.0),
                SurfaceKind::BowlSoliton { .. } => ("translator-residual-bowl", tol.translator_bowl),
                _ if spec.jet_mode == reaper_core::catalog::JetMode::FiniteDifference => {
                    ("translator-residual-fd", tol.translator_fd)
                }
                _ => ("translator-residual-analytic", tol.translator_analytic),
            };
            vec![checks::translator_check(name, &np, grid, a.tol.unwrap_or(default_tol))?]
        }
        Suite::DriftLaplacian => vec![
            checks::drift_laplacian_check(&np, grid, a.tol.unwrap_or(tol.drift_laplacian))?,
            checks::gradient_identity_check(&np, grid, 1e-8)?,
        ],
        Suite::Superharmonic => {
            let params = ReaperParams::new(a.surface.lambda, a.surface.alpha, a.surface.level_c)?;
            let (identity, sign) = checks::superharmonic_check(&params, &np, grid, a.tol.unwrap_or(tol.superharmonic));
            vec![identity, sign]
        }
        other => {
            return Err(usage(format!(
                "surface: `--surface` applies to the translator, lembaseq and superharmonic suites, not `{}`",
                other.name()
            )))
        }
    })
}

fn run_check(a: &CheckArgs) -> Result<i32> {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse::<Suite>().map_err(|e| usage(e.to_string()))?]
    };
    if !(a.step > 0.0 && a.step.is_finite()) {
        return Err(usage(format!("step: must be positive, got {}", a.step)));
    }
    if let Some(t) = a.tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(usage(format!("tol: must be non-negative, got {t}")));
        }
    }
    let cfg = SuiteConfig {
        grid: parse_grid(&a.grid)?,
        seed: a.seed,
        ode_step: a.step,
        ..SuiteConfig::default()
    };
    let surface = build_surface(&a.surface)?;
    if surface.is_some() && suites.len() != 1 {
        return Err(usage("surface: `--surface` needs a single `--suite`"));
    }
    let mut reports = Vec::new();
    match surface {
        Some((spec, patch)) => reports.extend(single_surface_checks(a, suites[0], &cfg, spec, patch)?),
        None => {
            for s in suites {
                reports.extend(checks::run_suite(s, &cfg)?);
            }
        }
    }
    if let Some(dir) = &a.out {
        write_check_artifacts(dir, &reports)?;
    }
    let rows: Vec<CheckArtifact> = reports.iter().cloned().map(CheckArtifact::new).collect();
    print!("{}", render_table(&rows));
    let failed: Vec<&CheckArtifact> = rows.iter().filter(|r| !r.report.pass).collect();
    if failed.is_empty() {
        return Ok(0);
    }
    let mut err = std::io::stderr().lock();
    for f in failed {
        writeln!(err, "{}", serde_json::to_string(f)?)?;
    }
    Ok(1)
}

fn run_geodesic(a: &GeodesicArgs) -> Result<i32> {
    let p = parse_vec3("from", &a.from).map_err(|e| usage(format!("{e:#}")))?;
    let d = parse_vec3("dir", &a.dir).map_err(|e| usage(format!("{e:#}")))?;
    require_finite("t", a.t)?;
    if a.t < 0.0 {
        return Err(usage(format!("t: must be non-negative, got {}", a.t)));
    }
    if !(a.step > 0.0 && a.step.is_finite()) {
        return Err(usage(format!("step: must be positive, got {}", a.step)));
    }
    let traj = checks::shoot(&Vec3::from(p), &Vec3::from(d), a.t, a.step)?;
    let mut buf = Vec::new();
    write_trajectory_csv(&mut buf, &traj)?;
    emit(a.out.as_deref(), &buf)?;
    Ok(0)
}

fn equidistant_t_values(a: &EquidistantArgs) -> Result<Vec<f64>> {
    let t = match (&a.t_values, a.leaves) {
        (Some(s), _) => parse_list("t-values", s).map_err(|e| usage(format!("{e:#}")))?,
        (None, Some(n)) => symmetric_t_grid(n, a.t_max.unwrap_or(9.0)),
        (None, None) => return Err(usage("t-values: give `--t-values` or `--leaves`")),
    };
    if t.is_empty() || t.iter().any(|x| !x.is_finite()) {
        return Err(usage("t-values: need at least one finite distance"));
    }
    Ok(t)
}

fn run_equidistant(a: &EquidistantArgs) -> Result<i32> {
    let t_values = equidistant_t_values(a)?;
    let grid = parse_grid(&a.grid)?;
    let mut buf = Vec::new();
    match build_surface(&a.surface)? {
        Some((_, patch)) => {
            writeln!(buf, "t,u,v,x1,x2,x3")?;
            for &t in &t_values {
                for (u, v) in grid.nodes(patch.domain()) {
                    let s = sample(&patch, u, v)?;
                    let x = equidistant_point(&s, t)?;
                    writeln!(buf, "{t},{u},{v},{},{},{}", x.x, x.y, x.z)?;
                }
            }
        }
        None => {
            let domain = ChartDomain::new(0.0, std::f64::consts::PI, -1.0, 1.0)?;
            write_foliation_csv(&mut buf, &t_values, &domain, &grid)?;
        }
    }
    emit(a.out.as_deref(), &buf)?;
    if !a.check {
        return Ok(0);
    }
    let target = FoliationBox {
        density: a.density,
        ..FoliationBox::default()
    };
    let rep = verify_foliation(&t_values, &grid, &target)?;
    let reports: Vec<CheckReport> = rep.reports().into_iter().cloned().collect();
    if let Some(dir) = &a.report_dir {
        write_check_artifacts(dir, &reports)?;
    }
    let rows: Vec<CheckArtifact> = reports.into_iter().map(CheckArtifact::new).collect();
    eprint!("{}", render_table(&rows));
    Ok(if rep.pass() { 0 } else { 1 })
}

#[derive(Serialize)]
struct MeasureOutput {
    schema_version: u32,
    kind: &'static str,
    measure: &'static str,
    surface: PatchSpec,
    grid: String,
    params: serde_json::Value,
    value: f64,
    lower_bound_flag: bool,
    tail_warning: bool,
    details: serde_json::Value,
}

fn measure_grid(a: &MeasureArgs) -> Result<GridSpec> {
    let q: Quadrature = a.quadrature.parse().map_err(|e: reaper_core::Error| usage(e.to_string()))?;
    let s = match a.spacing {
        SpacingArg::Uniform => Spacing::Uniform,
        SpacingArg::Graded => Spacing::Graded,
    };
    Ok(parse_grid(&a.grid)?.with_quadrature(q).with_spacing(s))
}

fn parse_pair(field: &str, s: &str) -> Result<(f64, f64)> {
    match parse_list(field, s).map_err(|e| usage(format!("{e:#}")))?.as_slice() {
        [u, v] => Ok((*u, *v)),
        _ => Err(usage(format!("{field}: expected `u,v`, got `{s}`"))),
    }
}

fn run_measure(a: &MeasureArgs) -> Result<i32> {
    let (spec, patch) = require_surface(&a.surface)?;
    let grid = measure_grid(a)?;
    let bad = |e: anyhow::Error| usage(format!("{e:#}"));
    let out = |measure, params, value, lower_bound_flag, tail_warning, details| MeasureOutput {
        schema_version: SCHEMA_VERSION,
        kind: "measure",
        measure,
        surface: spec,
        grid: grid.describe(),
        params,
        value,
        lower_bound_flag,
        tail_warning,
        details,
    };
    let doc = match a.measure {
        MeasureKind::F => {
            let x0 = Vec3::from(parse_vec3("x0", &a.x0).map_err(bad)?);
            let t0: f64 = a.t0.trim().parse().map_err(|_| usage(format!("t0: `{}` is not a number", a.t0)))?;
            let f = f_functional(&patch, &x0, t0, &grid)?;
            out(
                "f",
                json!({ "x0": [x0.x, x0.y, x0.z], "t0": t0 }),
                f.value,
                false,
                f.tail_warning,
                json!({ "tail_bound": f.tail_bound }),
            )
        }
        MeasureKind::Entropy => {
            let centers: Vec<Vec3> = a
                .x0
                .split(';')
                .map(|c| parse_vec3("x0", c).map(Vec3::from))
                .collect::<Result<_>>()
                .map_err(bad)?;
            let scales = parse_list("t0", &a.t0).map_err(bad)?;
            let e = entropy_estimate(&patch, &centers, &scales, &grid)?;
            out(
                "entropy",
                json!({ "centers": centers.iter().map(|c| [c.x, c.y, c.z]).collect::<Vec<_>>(), "t0": scales }),
                e.value,
                e.lower_bound,
                e.tail_warning,
                json!({ "argmax_x0": e.x0, "argmax_t0": e.t0, "evaluated": e.evaluated }),
            )
        }
        MeasureKind::Extrinsic => {
            let center = Vec3::from(parse_vec3("x0", &a.x0).map_err(bad)?);
            let radii = parse_list("radii", &a.radii).map_err(bad)?;
            let fit = extrinsic_volume_ratio(&patch, &center, &radii, &grid)?;
            out(
                "extrinsic",
                json!({ "center": [center.x, center.y, center.z], "radii": radii }),
                fit.slope,
                false,
                false,
                json!({ "volumes": fit.volumes, "ratios": fit.ratios(), "intercept": fit.intercept }),
            )
        }
        MeasureKind::Intrinsic => {
            let origin = parse_pair("origin", &a.origin)?;
            let radii = parse_list("radii", &a.radii).map_err(bad)?;
            let h = LinearField::coordinate(2);
            let weight: Option<&dyn reaper_core::fields::AmbientScalarField> = match a.weight {
                WeightArg::None => None,
                WeightArg::X3 => Some(&h),
            };
            let fit = intrinsic_volume_growth(&patch, origin, &radii, weight, &grid)?;
            out(
                "intrinsic",
                json!({ "origin": [origin.0, origin.1], "radii": radii, "weight": format!("{:?}", a.weight).to_lowercase() }),
                fit.slope,
                false,
                false,
                json!({ "volumes": fit.volumes, "ratios": fit.ratios(), "intercept": fit.intercept }),
            )
        }
        MeasureKind::Stability => {
            let c = parse_pair("origin", &a.origin)?;
            let bump = BumpFunction::new([c.0, c.1], a.bump_radius, a.bump_amplitude)?;
            let q = stability_form(&patch, &bump, &grid)?;
            out(
                "stability",
                json!({ "center": [c.0, c.1], "radius": a.bump_radius, "amplitude": a.bump_amplitude }),
                q,
                false,
                false,
                json!({ "positive": q > 0.0 }),
            )
        }
    };
    emit(a.out.as_deref(), &to_json_bytes(&doc)?)?;
    Ok(0)
}

fn run_report(a: &ReportArgs) -> Result<i32> {
    let rows = artifacts::read_check_artifacts(&a.dir).map_err(|e| usage(format!("{e:#}")))?;
    let table = render_table(&rows);
    emit(a.out.as_deref(), table.as_bytes())?;
    Ok(if rows.iter().all(|r| r.report.pass) { 0 } else { 1 })
}
