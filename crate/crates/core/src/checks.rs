//! Named residual checks over the surface catalog, grouped into suites.
//!
//! Every report produced here carries a name listed in [`REGISTRY`], which
//! maps it to the identity it verifies. Suites are deterministic for a fixed
//! [`SuiteConfig`].

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    make_bowl_soliton, make_grim_reaper, make_reaper_level_set, make_tilted_vertical_plane, make_vertical_plane,
    ChartDomain, ImmersedPatch, JetMode, ReaperParams, SurfaceKind,
};
use crate::diffgeo::{default_laplacian_step, intrinsic_gradient, sample, weighted_laplacian};
use crate::error::{Error, Result};
use crate::fields::LinearField;
use crate::foliation::{
    check_plane_family_curvature, check_plane_family_metric, symmetric_t_grid, verify_equidistance, verify_foliation,
    FoliationBox,
};
use crate::grid::{GridSpec, Quadrature, Spacing};
use crate::ilmanen::{
    geodesic_acceleration, geodesic_closed_form, geodesic_ode_integrate, unit_velocity, GeodesicState,
};
use crate::measures::{
    entropy_estimate, extrinsic_volume_ratio, f_functional, intrinsic_volume_growth, stability_form, BumpFunction,
};
use crate::report::CheckReport;
use crate::translator::{run_superharmonicity_suite, translator_residual, u_value};
use crate::Vec3;

/// Check name and the identity it verifies. Each name appears once.
pub const REGISTRY: &[(&str, &str)] = &[
    ("translator-residual-analytic", "translator equation H = <e3, nu>, analytic jets"),
    ("translator-residual-fd", "translator equation H = <e3, nu>, finite-difference jets"),
    ("translator-residual-planes", "vertical planes: H = 0 = <e3, nu> exactly"),
    ("translator-residual-bowl", "translator equation on the ODE bowl profile"),
    ("level-set-constancy", "tilted reapers are level sets of u"),
    ("drift-laplacian-coordinates", "drift Laplacian of coordinates: Delta_f x_i = <e_i, e3>, f = -x3"),
    ("gradient-identity", "|grad x_i|^2 = 1 - <e_i, nu>^2"),
    ("superharmonic-identity", "Delta_g e^u = e^u/lambda^4 [(lambda^2-1-alpha^2)<e1,nu>^2 - (alpha<e3,nu> - <e2,nu>)^2]"),
    ("superharmonic-sign-law", "Delta_g e^u <= 0 when alpha^2 >= lambda^2 - 1"),
    ("superharmonic-violation", "Delta_g e^u > 0 on tilted planes when alpha^2 < lambda^2 - 1"),
    ("christoffel-table", "Christoffel symbols of e^{x3}<,> reproduce the geodesic system"),
    ("geodesic-closed-form", "closed-form conformal geodesics vs RK4 integration"),
    ("geodesic-ode-consistency", "closed-form geodesics solve the geodesic system"),
    ("geodesic-speed-drift", "conformal speed e^{x3}|v|^2 is conserved"),
    ("geodesic-speed-identity", "v1^2 + v2^2 = e^{-x3} - v3^2 along unit-speed geodesics"),
    ("equidistance-landing", "normal geodesics from {x1 = 0} land on Sigma_t"),
    ("equidistance-length", "conformal length of the normal geodesic equals t"),
    ("plane-family-curvature", "H on Sigma_t equals sin(x1/2)/2 = <e3, nu>/2"),
    ("plane-family-metric", "first fundamental form of Sigma_t is diag(1/sin^2(x1/2), 1)"),
    ("foliation-disjointness", "leaves Sigma_t are pairwise disjoint"),
    ("foliation-monotonicity", "x3 along the normal geodesic increases with |t|"),
    ("foliation-coverage", "leaves Sigma_t fill (-pi, pi) x R x R"),
    ("entropy-plane-anchor", "entropy functional of a plane equals 1"),
    ("entropy-off-plane", "F of a plane at distance d is exp(-d^2/4t0)"),
    ("entropy-reaper-apex", "F of the grim reaper at its apex, against the arclength integral"),
    ("extrinsic-growth-plane", "extrinsic area growth of a plane is quadratic"),
    ("extrinsic-ratio-plane", "area of a plane in a ball of radius R is pi R^2"),
    ("extrinsic-growth-reaper", "finite entropy gives quadratic extrinsic growth of the grim reaper"),
    ("intrinsic-growth-plane", "intrinsic area growth of a plane is quadratic"),
    ("intrinsic-growth-reaper", "intrinsic area growth of the grim reaper is quadratic"),
    ("weighted-growth-reaper", "vol_h of intrinsic balls is at most quadratic for a weight bounded below"),
    ("stability-plane-positive", "Q_f(phi, phi) > 0 on vertical planes"),
];

pub fn anchor(name: &str) -> Option<&'static str> {
    REGISTRY.iter().find(|(n, _)| *n == name).map(|(_, a)| *a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Translator,
    #[serde(rename = "lembaseq", alias = "drift-laplacian")]
    DriftLaplacian,
    Superharmonic,
    Geodesic,
    Equidistant,
    Measures,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Translator,
        Suite::DriftLaplacian,
        Suite::Superharmonic,
        Suite::Geodesic,
        Suite::Equidistant,
        Suite::Measures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Translator => "translator",
            Suite::DriftLaplacian => "lembaseq",
            Suite::Superharmonic => "superharmonic",
            Suite::Geodesic => "geodesic",
            Suite::Equidistant => "equidistant",
            Suite::Measures => "measures",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = if s == "drift-laplacian" { "lembaseq" } else { s };
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter {
                field: "suite",
                reason: format!("unknown suite `{s}`"),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub translator_analytic: f64,
    pub translator_fd: f64,
    pub translator_bowl: f64,
    pub drift_laplacian: f64,
    pub superharmonic: f64,
    pub geodesic_position: f64,
    pub speed_drift: f64,
    pub speed_identity: f64,
    pub equidistance: f64,
    pub plane_family: f64,
    pub entropy: f64,
    pub slope: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            translator_analytic: 1e-8,
            translator_fd: 1e-5,
            translator_bowl: 1e-6,
            drift_laplacian: 1e-5,
            superharmonic: 1e-4,
            geodesic_position: 1e-6,
            speed_drift: 1e-7,
            speed_identity: 1e-8,
            equidistance: 1e-6,
            plane_family: 1e-8,
            entropy: 1e-6,
            slope: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub grid: GridSpec,
    pub seed: u64,
    pub ode_step: f64,
    pub geodesic_probes: usize,
    pub geodesic_t_end: f64,
    pub equidistance_probes: usize,
    pub equidistance_t: Vec<f64>,
    pub foliation_leaves: usize,
    pub foliation_density: f64,
    pub stability_bumps: usize,
    pub tolerances: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            grid: GridSpec::new(40, 40).expect("valid default grid"),
            seed: 42,
            ode_step: 1e-3,
            geodesic_probes: 50,
            geodesic_t_end: 10.0,
            equidistance_probes: 100,
            equidistance_t: vec![0.5, 1.0, 3.0],
            foliation_leaves: 200,
            foliation_density: 0.05,
            stability_bumps: 10,
            tolerances: Tolerances::default(),
        }
    }
}

/// A catalog surface with the label used in reports.
#[derive(Debug, Clone)]
pub struct NamedPatch {
    pub label: String,
    pub patch: ImmersedPatch,
}

fn named(label: impl Into<String>, patch: ImmersedPatch) -> NamedPatch {
    NamedPatch {
        label: label.into(),
        patch,
    }
}

/// `(λ, α)` pairs whose level sets of `u` are translators (`α² = λ² − 1`).
pub fn translating_level_set_params() -> Vec<ReaperParams> {
    [(1.0, 0.0), (SQRT_2, 1.0), (SQRT_2, -1.0)]
        .into_iter()
        .map(|(l, a)| ReaperParams::new(l, a, 0.0).expect("valid parameters"))
        .collect()
}

/// `{1, √2} × {0, ±1, ±2}`.
pub fn superharmonic_param_matrix() -> Vec<ReaperParams> {
    let mut out = Vec::new();
    for lambda in [1.0, SQRT_2] {
        for alpha in [0.0, 1.0, -1.0, 2.0, -2.0] {
            out.push(ReaperParams::new(lambda, alpha, 0.0).expect("valid parameters"));
        }
    }
    out
}

pub fn grim_reaper_patch() -> Result<ImmersedPatch> {
    make_grim_reaper(ChartDomain::new(0.0, PI, -1.0, 1.0)?)
}

pub fn level_set_patch(params: ReaperParams) -> Result<ImmersedPatch> {
    make_reaper_level_set(params, ChartDomain::new(0.0, params.slab_width(), -1.0, 1.0)?)
}

/// Vertical planes: `{x1 = π/2}` and a plane through `x1 = 1` with normal tilted by 0.3 rad.
pub fn vertical_planes() -> Result<Vec<NamedPatch>> {
    Ok(vec![
        named("vertical-plane x1=pi/2", make_vertical_plane(FRAC_PI_2, ChartDomain::square(1.0)?)?),
        named("vertical-plane x1=1 angle=0.3", make_tilted_vertical_plane(1.0, 0.3, ChartDomain::square(1.0)?)?),
    ])
}

/// Bowl soliton of radius 2 shifted to `x1 = π/2`, inside the unit slab.
pub fn bowl_patch() -> Result<ImmersedPatch> {
    Ok(make_bowl_soliton(2.0, 1e-3)?.translated(Vec3::new(FRAC_PI_2, 0.0, 0.0)))
}

/// Grim reaper, translating tilted reapers and vertical planes.
pub fn catalog_translators() -> Result<Vec<NamedPatch>> {
    let mut out = vec![named("grim-reaper", grim_reaper_patch()?)];
    for p in translating_level_set_params().into_iter().skip(1) {
        out.push(named(level_set_label(&p), level_set_patch(p)?));
    }
    out.extend(vertical_planes()?);
    Ok(out)
}

fn level_set_label(p: &ReaperParams) -> String {
    format!("reaper-level-set lambda={:.6} alpha={}", p.lambda, p.alpha)
}

fn is_plane(p: &ImmersedPatch) -> bool {
    matches!(p.kind(), SurfaceKind::VerticalPlane { .. })
}

fn grid_nodes_report<F>(name: &str, label: &str, patch: &ImmersedPatch, grid: &GridSpec, tol: f64, f: F) -> Result<CheckReport>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let res: Vec<(f64, Vec<f64>)> = grid
        .nodes(patch.domain())
        .par_iter()
        .map(|&(u, v)| f(u, v).map(|r| (r, vec![u, v])))
        .collect::<Result<_>>()?;
    Ok(CheckReport::from_residuals(name, format!("{label} {}", grid.describe()), tol, res))
}

fn merged(name: &str, tol: f64, parts: &[CheckReport]) -> CheckReport {
    let grid = parts.iter().map(|p| p.grid.as_str()).collect::<Vec<_>>().join("; ");
    CheckReport::merge(name, grid, tol, parts)
}

/// `|H − <e3, ν>|` at every grid node.
pub fn translator_check(name: &str, np: &NamedPatch, grid: &GridSpec, tol: f64) -> Result<CheckReport> {
    grid_nodes_report(name, &np.label, &np.patch, grid, tol, |u, v| {
        Ok(translator_residual(&sample(&np.patch, u, v)?))
    })
}

/// `max_i |Δ_f x_i − δ_{i3}|` with `f = −x3`.
pub fn drift_laplacian_check(np: &NamedPatch, grid: &GridSpec, tol: f64) -> Result<CheckReport> {
    let h = default_laplacian_step(np.patch.domain());
    let weight = LinearField::translator_weight();
    grid_nodes_report("drift-laplacian-coordinates", &np.label, &np.patch, grid, tol, |u, v| {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            let lap = weighted_laplacian(&np.patch, &LinearField::coordinate(i), &weight, u, v, h)?;
            let expect = if i == 2 { 1.0 } else { 0.0 };
            worst = worst.max((lap - expect).abs());
        }
        Ok(worst)
    })
}

/// `max_i ||∇x_i|² − (1 − <e_i, ν>²)|`.
pub fn gradient_identity_check(np: &NamedPatch, grid: &GridSpec, tol: f64) -> Result<CheckReport> {
    grid_nodes_report("gradient-identity", &np.label, &np.patch, grid, tol, |u, v| {
        let s = sample(&np.patch, u, v)?;
        Ok((0..3)
            .map(|i| {
                let g = intrinsic_gradient(&s, &LinearField::coordinate(i));
                (g.norm_squared() - (1.0 - s.normal[i] * s.normal[i])).abs()
            })
            .fold(0.0, f64::max))
    })
}

/// Identity and sign reports of the superharmonicity suite on one surface.
pub fn superharmonic_check(params: &ReaperParams, np: &NamedPatch, grid: &GridSpec, tol: f64) -> (CheckReport, CheckReport) {
    let suite = run_superharmonicity_suite(params, &np.patch, grid);
    let label = format!("{} lambda={:.6} alpha={} {}", np.label, params.lambda, params.alpha, grid.describe());
    let identity = CheckReport::from_residuals(
        "superharmonic-identity",
        label.clone(),
        tol,
        suite.records.iter().map(|r| (r.residual, vec![r.u, r.v])),
    )
    .with_skipped(suite.skipped);
    let sign = CheckReport::from_residuals(
        "superharmonic-sign-law",
        label,
        0.0,
        suite.records.iter().map(|r| (if r.sign_ok { 0.0 } else { 1.0 }, vec![r.u, r.v])),
    )
    .with_skipped(suite.skipped);
    (identity, sign)
}

pub fn translator_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let tol = &cfg.tolerances;
    let grid = &cfg.grid;
    let surfaces = catalog_translators()?;
    let mut analytic = Vec::new();
    let mut fd = Vec::new();
    let mut planes = Vec::new();
    for np in &surfaces {
        if is_plane(&np.patch) {
            planes.push(translator_check("translator-residual-planes", np, grid, 0.0)?);
            continue;
        }
        analytic.push(translator_check("translator-residual-analytic", np, grid, tol.translator_analytic)?);
        let fd_patch = named(format!("{} [fd]", np.label), np.patch.with_jet_mode(JetMode::FiniteDifference));
        fd.push(translator_check("translator-residual-fd", &fd_patch, grid, tol.translator_fd)?);
    }
    let bowl = named("bowl-soliton R=2", bowl_patch()?);
    let bowl_report = translator_check("translator-residual-bowl", &bowl, grid, tol.translator_bowl)?;

    let mut constancy = Vec::new();
    for p in translating_level_set_params() {
        let np = named(level_set_label(&p), level_set_patch(p)?);
        constancy.push(grid_nodes_report("level-set-constancy", &np.label, &np.patch, grid, 1e-10, |u, v| {
            Ok((u_value(&p, &np.patch.embed(u, v))? - p.level_c).abs())
        })?);
    }
    Ok(vec![
        merged("translator-residual-analytic", tol.translator_analytic, &analytic),
        merged("translator-residual-fd", tol.translator_fd, &fd),
        merged("translator-residual-planes", 0.0, &planes),
        bowl_report,
        merged("level-set-constancy", 1e-10, &constancy),
    ])
}

pub fn drift_laplacian_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let tol = cfg.tolerances.drift_laplacian;
    let mut lap = Vec::new();
    let mut grad = Vec::new();
    for np in catalog_translators()? {
        lap.push(drift_laplacian_check(&np, &cfg.grid, tol)?);
        grad.push(gradient_identity_check(&np, &cfg.grid, 1e-8)?);
    }
    Ok(vec![
        merged("drift-laplacian-coordinates", tol, &lap),
        merged("gradient-identity", 1e-8, &grad),
    ])
}

pub fn superharmonic_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let tol = cfg.tolerances.superharmonic;
    let surfaces = catalog_translators()?;
    let jobs: Vec<(ReaperParams, &NamedPatch)> = superharmonic_param_matrix()
        .into_iter()
        .flat_map(|p| surfaces.iter().map(move |s| (p, s)))
        .collect();
    let mut identity = Vec::new();
    let mut sign = Vec::new();
    for (p, np) in jobs {
        let (id, sg) = superharmonic_check(&p, np, &cfg.grid, tol);
        identity.push(id);
        if p.satisfies_sign_hypothesis() {
            sign.push(sg);
        }
    }
    let violating = ReaperParams::new(SQRT_2, 0.0, 0.0)?;
    let probe = named(
        "vertical-plane x1=1 angle=0.3",
        make_tilted_vertical_plane(1.0, 0.3, ChartDomain::square(1.0)?)?,
    );
    let suite = run_superharmonicity_suite(&violating, &probe.patch, &cfg.grid);
    let violation = CheckReport::from_residuals(
        "superharmonic-violation",
        format!("{} lambda={:.6} alpha=0 {} (sign_ok fraction, expected 0)", probe.label, SQRT_2, cfg.grid.describe()),
        0.0,
        [(suite.summary.sign_ok_fraction, vec![suite.summary.worst_point[0], suite.summary.worst_point[1]])],
    );
    Ok(vec![
        merged("superharmonic-identity", tol, &identity),
        merged("superharmonic-sign-law", 0.0, &sign),
        violation,
    ])
}

/// Seeded conformal-unit initial data with a horizontal component of at least 0.3.
pub fn random_geodesic_data(n: usize, seed: u64) -> Vec<(Vec3, Vec3)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let p = Vec3::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0));
            let d = loop {
                let d = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let r = d.norm();
                if r > 0.1 && r <= 1.0 && d.x.hypot(d.y) >= 0.3 * r {
                    break d;
                }
            };
            (p, unit_velocity(&p, &d).expect("nonzero direction"))
        })
        .collect()
}

pub fn geodesic_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let tol = &cfg.tolerances;
    let data = random_geodesic_data(cfg.geodesic_probes, cfg.seed);
    let label = format!(
        "{} seeded shots, t in [0, {}], step {}, seed {}",
        cfg.geodesic_probes, cfg.geodesic_t_end, cfg.ode_step, cfg.seed
    );
    let runs: Vec<(f64, f64, f64, Vec<f64>)> = data
        .par_iter()
        .map(|(p, v)| -> Result<(f64, f64, f64, Vec<f64>)> {
            let traj = geodesic_ode_integrate(p, v, cfg.geodesic_t_end, cfg.ode_step)?;
            let (mut pos, mut drift, mut ident) = (0.0f64, 0.0f64, 0.0f64);
            for s in &traj {
                pos = pos.max((s.position - geodesic_closed_form(p, v, s.t)?).norm());
                drift = drift.max((s.conformal_speed() - 1.0).abs());
                ident = ident.max(s.speed_identity_residual());
            }
            Ok((pos, drift, ident, vec![p.x, p.y, p.z, v.x, v.y, v.z]))
        })
        .collect::<Result<_>>()?;
    let pick = |k: usize| runs.iter().map(move |r| ([r.0, r.1, r.2][k], r.3.clone()));

    // fourth-order differences of the closed form substituted into the system
    let h = 1e-3;
    let consistency: Vec<(f64, Vec<f64>)> = data
        .par_iter()
        .map(|(p, v)| -> Result<(f64, Vec<f64>)> {
            let g = |s: f64| geodesic_closed_form(p, v, s);
            let mut worst: f64 = 0.0;
            for k in 1..50 {
                let t = cfg.geodesic_t_end * k as f64 / 50.0;
                let (a, b, c, d, e) = (g(t - 2.0 * h)?, g(t - h)?, g(t)?, g(t + h)?, g(t + 2.0 * h)?);
                let vel = (a - e + 8.0 * (d - b)) / (12.0 * h);
                let acc = (-e + 16.0 * d - 30.0 * c + 16.0 * b - a) / (12.0 * h * h);
                worst = worst.max((acc - geodesic_acceleration(&vel)).norm());
            }
            Ok((worst, vec![p.x, p.y, p.z, v.x, v.y, v.z]))
        })
        .collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let table: Vec<(f64, Vec<f64>)> = (0..200)
        .map(|_| {
            let v = Vec3::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let hand = Vec3::new(-v.x * v.z, -v.y * v.z, -0.5 * (v.z * v.z - v.x * v.x - v.y * v.y));
            ((geodesic_acceleration(&v) - hand).norm(), vec![v.x, v.y, v.z])
        })
        .collect();

    Ok(vec![
        CheckReport::from_residuals("christoffel-table", "200 seeded velocities", 1e-12, table),
        CheckReport::from_residuals("geodesic-closed-form", label.clone(), tol.geodesic_position, pick(0)),
        CheckReport::from_residuals("geodesic-ode-consistency", format!("{label}, difference step {h}"), 1e-6, consistency),
        CheckReport::from_residuals("geodesic-speed-drift", label.clone(), tol.speed_drift, pick(1)),
        CheckReport::from_residuals("geodesic-speed-identity", label, tol.speed_identity, pick(2)),
    ])
}

pub fn equidistant_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let tol = &cfg.tolerances;
    let mut landing = Vec::new();
    let mut length = Vec::new();
    let mut curvature = Vec::new();
    let mut metric = Vec::new();
    let chart = ChartDomain::new(0.0, PI, -1.0, 1.0)?;
    for (k, &t) in cfg.equidistance_t.iter().enumerate() {
        let rep = verify_equidistance(t, cfg.equidistance_probes, cfg.seed + k as u64, cfg.ode_step, tol.equidistance)?;
        landing.push(rep.landing);
        length.push(rep.length);
        let mut c = check_plane_family_curvature(t, chart, &cfg.grid, tol.plane_family)?;
        c.grid = format!("t={t} {}", c.grid);
        curvature.push(c);
        let mut m = check_plane_family_metric(t, chart, &cfg.grid, tol.plane_family)?;
        m.grid = format!("t={t} {}", m.grid);
        metric.push(m);
    }
    let target = FoliationBox {
        density: cfg.foliation_density,
        ..Default::default()
    };
    let fol = verify_foliation(&symmetric_t_grid(cfg.foliation_leaves, 9.0), &cfg.grid, &target)?;
    Ok(vec![
        merged("equidistance-landing", tol.equidistance, &landing),
        merged("equidistance-length", tol.equidistance, &length),
        merged("plane-family-curvature", tol.plane_family, &curvature),
        merged("plane-family-metric", tol.plane_family, &metric),
        fol.disjointness,
        fol.monotonicity,
        fol.coverage,
    ])
}

/// `F` of the grim reaper by the arclength parametrization
/// `x1 = 2 atan(e^σ)`, `x3 = ln cosh σ`, integrating `x2` exactly.
pub fn reaper_f_by_arclength(x0: &Vec3, t0: f64) -> f64 {
    let h = 1e-3;
    let n = (40.0 * t0.sqrt().max(1.0) / h) as i64;
    let terms: Vec<f64> = (-n..=n)
        .map(|k| {
            let s = k as f64 * h;
            let x1 = 2.0 * s.exp().atan();
            let x3 = s.cosh().ln();
            (-((x1 - x0.x).powi(2) + (x3 - x0.z).powi(2)) / (4.0 * t0)).exp()
        })
        .collect();
    terms.iter().sum::<f64>() * h / (4.0 * PI * t0).sqrt()
}

fn slope_report(name: &str, label: String, residual: f64, tol: f64, slope: f64) -> CheckReport {
    CheckReport::from_residuals(name, format!("{label}, slope {slope:.6}"), tol, [(residual, vec![slope])])
}

pub fn measures_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let tol = &cfg.tolerances;
    let plane = make_vertical_plane(0.0, ChartDomain::square(10.0)?)?;
    let gl = GridSpec::new(40, 40)?.with_quadrature(Quadrature::GaussLegendre(4));
    let centers = [Vec3::zeros(), Vec3::new(0.0, 1.0, -1.0), Vec3::new(0.5, 0.0, 0.0)];
    let est = entropy_estimate(&plane, &centers, &[0.5, 1.0, 2.0], &gl)?;
    let anchor_report = CheckReport::from_residuals(
        "entropy-plane-anchor",
        format!("plane half-width 10, {} probes, {}", est.evaluated, gl.describe()),
        tol.entropy,
        [((est.value - 1.0).abs(), est.x0.to_vec())],
    );
    let off: Vec<(f64, Vec<f64>)> = [0.5, 1.0, 2.0]
        .iter()
        .map(|&d| -> Result<(f64, Vec<f64>)> {
            let f = f_functional(&plane, &Vec3::new(d, 0.0, 0.0), 1.0, &gl)?;
            Ok(((f.value - (-d * d / 4.0f64).exp()).abs(), vec![d]))
        })
        .collect::<Result<_>>()?;
    let off_report = CheckReport::from_residuals("entropy-off-plane", format!("d in {{0.5, 1, 2}}, t0 = 1, {}", gl.describe()), tol.entropy, off);

    let apex = Vec3::new(FRAC_PI_2, 0.0, 0.0);
    let reaper_f = make_grim_reaper(ChartDomain::with_margin(0.0, PI, -12.0, 12.0, 1e-12)?)?;
    let graded = |n: usize| GridSpec::new(n, n).map(|g| g.with_spacing(Spacing::Graded));
    let f = f_functional(&reaper_f, &apex, 1.0, &graded(128)?)?;
    let oracle = reaper_f_by_arclength(&apex, 1.0);
    let in_range = f.value > 1.0 && f.value <= 2.0 && !f.tail_warning;
    let reaper_report = CheckReport::from_residuals(
        "entropy-reaper-apex",
        format!("apex, t0 = 1, F = {:.12}, {}", f.value, graded(128)?.describe()),
        1e-8,
        [(if in_range { (f.value - oracle).abs() } else { f64::INFINITY }, apex.iter().copied().collect())],
    );

    let plane_g = make_vertical_plane(0.0, ChartDomain::square(12.0)?)?;
    let g240 = GridSpec::new(240, 240)?;
    let radii = [2.0, 4.0, 6.0, 8.0, 10.0];
    let ext = extrinsic_volume_ratio(&plane_g, &Vec3::zeros(), &radii, &g240)?;
    let ratio_res = ext.ratios().iter().map(|r| (r / PI - 1.0).abs()).fold(0.0, f64::max);
    let int = intrinsic_volume_growth(&plane_g, (0.0, 0.0), &radii, None, &g240)?;

    let reaper_ext = make_grim_reaper(ChartDomain::with_margin(0.0, PI, -30.0, 30.0, 1e-12)?)?;
    let ext_r = extrinsic_volume_ratio(&reaper_ext, &apex, &[6.0, 9.0, 12.0, 18.0, 24.0], &graded(300)?)?;
    let reaper_int = make_grim_reaper(ChartDomain::with_margin(0.0, PI, -14.0, 14.0, 1e-12)?)?;
    let int_r = intrinsic_volume_growth(&reaper_int, (FRAC_PI_2, 0.0), &radii, None, &graded(200)?)?;
    let h = LinearField::coordinate(2);
    let w_r = intrinsic_volume_growth(&reaper_int, (FRAC_PI_2, 0.0), &radii, Some(&h), &graded(200)?)?;

    let bump_plane = make_vertical_plane(0.0, ChartDomain::square(3.0)?)?;
    let qgrid = GridSpec::new(48, 48)?.with_quadrature(Quadrature::GaussLegendre(4));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bumps: Vec<BumpFunction> = (0..cfg.stability_bumps)
        .map(|_| {
            BumpFunction::new(
                [rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)],
                rng.gen_range(0.3..1.4),
                rng.gen_range(0.5..2.0),
            )
        })
        .collect::<Result<_>>()?;
    let q: Vec<(f64, Vec<f64>)> = bumps
        .par_iter()
        .map(|b| -> Result<(f64, Vec<f64>)> {
            let q = stability_form(&bump_plane, b, &qgrid)?;
            Ok((if q > 0.0 { 0.0 } else { 1.0 }, vec![b.center[0], b.center[1], b.radius, q]))
        })
        .collect::<Result<_>>()?;

    Ok(vec![
        anchor_report,
        off_report,
        reaper_report,
        slope_report("extrinsic-growth-plane", format!("radii {radii:?}, {}", g240.describe()), (ext.slope - 2.0).abs(), 0.05, ext.slope),
        CheckReport::from_residuals("extrinsic-ratio-plane", format!("vol/(pi R^2) - 1, {}", g240.describe()), 0.02, [(ratio_res, ext.ratios())]),
        slope_report(
            "extrinsic-growth-reaper",
            format!("apex, radii {:?}, {}", ext_r.radii, graded(300)?.describe()),
            (ext_r.slope - 2.0).abs(),
            tol.slope,
            ext_r.slope,
        ),
        slope_report("intrinsic-growth-plane", format!("radii {radii:?}, {}", g240.describe()), (int.slope - 2.0).abs(), 0.05, int.slope),
        slope_report(
            "intrinsic-growth-reaper",
            format!("apex, radii {radii:?}, {}", graded(200)?.describe()),
            (int_r.slope - 2.0).abs(),
            tol.slope,
            int_r.slope,
        ),
        slope_report(
            "weighted-growth-reaper",
            format!("weight x3, apex, radii {radii:?}, {}", graded(200)?.describe()),
            (w_r.slope - 2.0).max(0.0),
            tol.slope,
            w_r.slope,
        ),
        CheckReport::from_residuals(
            "stability-plane-positive",
            format!("{} seeded bumps (seed {}), {}", cfg.stability_bumps, cfg.seed, qgrid.describe()),
            0.0,
            q,
        ),
    ])
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    match suite {
        Suite::Translator => translator_suite(cfg),
        Suite::DriftLaplacian => drift_laplacian_suite(cfg),
        Suite::Superharmonic => superharmonic_suite(cfg),
        Suite::Geodesic => geodesic_suite(cfg),
        Suite::Equidistant => equidistant_suite(cfg),
        Suite::Measures => measures_suite(cfg),
    }
}

/// Trajectory of one shot, for export.
pub fn shoot(p: &Vec3, direction: &Vec3, t_end: f64, step: f64) -> Result<Vec<GeodesicState>> {
    let v = unit_velocity(p, direction)?;
    geodesic_ode_integrate(p, &v, t_end, step)
}
