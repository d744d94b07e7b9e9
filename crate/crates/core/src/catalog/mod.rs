//! Parametric surfaces consumed by the rest of the crate.
//!
//! Every surface is a chart `(u, v) -> R^3` over a rectangular
//! [`ChartDomain`]. Graph-type surfaces use `(u, v) = (x1, x2)` and are
//! oriented by `du x dv`, which makes `<e3, nu> > 0`. Vertical planes use
//! `du x dv` as well, giving `nu = (cos θ, sin θ, 0)`.

mod bowl;

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use bowl::BowlProfile;

use crate::error::{Error, Result};
use crate::Vec3;

/// Rectangular chart bounds plus a clip distance from the edges.
///
/// Samples are taken in `[u_min + margin, u_max - margin] x [v_min + margin, v_max - margin]`;
/// finite-difference stencils may reach out to the outer bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartDomain {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub margin: f64,
}

impl ChartDomain {
    /// Domain with the default margin `1e-3 * (u_max - u_min)`.
    pub fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Result<Self> {
        Self::with_margin(u_min, u_max, v_min, v_max, 1e-3 * (u_max - u_min))
    }

    pub fn with_margin(u_min: f64, u_max: f64, v_min: f64, v_max: f64, margin: f64) -> Result<Self> {
        let d = Self {
            u_min,
            u_max,
            v_min,
            v_max,
            margin,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn square(half_width: f64) -> Result<Self> {
        Self::new(-half_width, half_width, -half_width, half_width)
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.u_min, self.u_max, self.v_min, self.v_max, self.margin];
        if vals.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidDomain("bounds must be finite".into()));
        }
        if self.margin <= 0.0 {
            return Err(Error::InvalidDomain(format!("margin must be positive, got {}", self.margin)));
        }
        if self.u_min + self.margin >= self.u_max - self.margin {
            return Err(Error::InvalidDomain(format!(
                "empty u-interval [{}, {}] after margin {}",
                self.u_min, self.u_max, self.margin
            )));
        }
        if self.v_min + self.margin >= self.v_max - self.margin {
            return Err(Error::InvalidDomain(format!(
                "empty v-interval [{}, {}] after margin {}",
                self.v_min, self.v_max, self.margin
            )));
        }
        Ok(())
    }

    /// Sampling interval in `u`.
    pub fn u_range(&self) -> (f64, f64) {
        (self.u_min + self.margin, self.u_max - self.margin)
    }

    pub fn v_range(&self) -> (f64, f64) {
        (self.v_min + self.margin, self.v_max - self.margin)
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        let (u0, u1) = self.u_range();
        let (v0, v1) = self.v_range();
        u >= u0 && u <= u1 && v >= v0 && v <= v1
    }

    pub fn scale(&self) -> f64 {
        (self.u_max - self.u_min).max(self.v_max - self.v_min)
    }

    pub(crate) fn edge_distance(&self, u: f64, v: f64) -> (f64, f64) {
        (
            (u - self.u_min).min(self.u_max - u),
            (v - self.v_min).min(self.v_max - v),
        )
    }
}

/// Parameters `(λ, α, c)` of the function
/// `u = x3/λ² + (α/λ²) x2 + ln sin(x1/λ)` and of its level sets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReaperParams {
    pub lambda: f64,
    pub alpha: f64,
    pub level_c: f64,
}

impl ReaperParams {
    pub fn new(lambda: f64, alpha: f64, level_c: f64) -> Result<Self> {
        let p = Self {
            lambda,
            alpha,
            level_c,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda >= 1.0) {
            return Err(Error::InvalidParameter {
                field: "lambda",
                reason: format!("must be >= 1, got {}", self.lambda),
            });
        }
        if !self.alpha.is_finite() {
            return Err(Error::InvalidParameter {
                field: "alpha",
                reason: "must be finite".into(),
            });
        }
        if !self.level_c.is_finite() {
            return Err(Error::InvalidParameter {
                field: "level_c",
                reason: "must be finite".into(),
            });
        }
        Ok(())
    }

    /// Width `λπ` of the slab on which `u` is defined.
    pub fn slab_width(&self) -> f64 {
        self.lambda * PI
    }

    /// `λ ∈ [1, √2]`, the range in which the sign law is used for rigidity.
    pub fn in_rigidity_regime(&self) -> bool {
        self.lambda <= std::f64::consts::SQRT_2 + 1e-12
    }

    /// `α² ≥ λ² − 1`: the closed-form `Δ_g e^u` is then non-positive.
    pub fn satisfies_sign_hypothesis(&self) -> bool {
        self.alpha * self.alpha >= self.lambda * self.lambda - 1.0 - 1e-12
    }

    /// The level sets of `u` are translators exactly when `α² = λ² − 1`.
    pub fn level_sets_translate(&self) -> bool {
        (self.alpha * self.alpha - (self.lambda * self.lambda - 1.0)).abs() < 1e-12
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JetMode {
    #[default]
    Analytic,
    FiniteDifference,
}

/// The surface family and its shape parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum SurfaceKind {
    /// `(x1 - u sin θ, u cos θ, v)`: the vertical plane through `(x1, 0, 0)`
    /// with normal `(cos θ, sin θ, 0)`.
    VerticalPlane {
        x1: f64,
        #[serde(default)]
        angle: f64,
    },
    /// `(u, v, -ln sin u)` over `0 < u < π`.
    GrimReaper {},
    /// `(u, v, λ² c − α v − λ² ln sin(u/λ))`, a level set of `u`.
    ReaperLevelSet {
        lambda: f64,
        alpha: f64,
        level_c: f64,
    },
    /// `(u, v, ln(t²/4) − 2 ln sin(u/2))`, the equidistant at distance `t > 0`
    /// from the plane `{x1 = 0}` in the conformal metric.
    PlaneFamily { t: f64 },
    /// Rotationally symmetric translating graph, Cartesian chart.
    BowlSoliton { radius_max: f64, ode_step: f64 },
    /// `(u, v, a u²)`; not a translator, used as a negative control.
    ParabolicCylinder { a: f64 },
}

impl SurfaceKind {
    pub fn label(&self) -> &'static str {
        match self {
            SurfaceKind::VerticalPlane { .. } => "vertical-plane",
            SurfaceKind::GrimReaper {} => "grim-reaper",
            SurfaceKind::ReaperLevelSet { .. } => "reaper-level-set",
            SurfaceKind::PlaneFamily { .. } => "plane-family",
            SurfaceKind::BowlSoliton { .. } => "bowl-soliton",
            SurfaceKind::ParabolicCylinder { .. } => "parabolic-cylinder",
        }
    }
}

/// Serializable description of a patch: `{kind, params, domain}` plus
/// optional jet settings and a rigid translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatchSpec {
    #[serde(flatten)]
    pub kind: SurfaceKind,
    pub domain: ChartDomain,
    #[serde(default)]
    pub jet_mode: JetMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
    #[serde(default)]
    pub offset: [f64; 3],
}

impl PatchSpec {
    pub fn new(kind: SurfaceKind, domain: ChartDomain) -> Self {
        Self {
            kind,
            domain,
            jet_mode: JetMode::Analytic,
            fd_step: None,
            offset: [0.0; 3],
        }
    }

    pub fn build(&self) -> Result<ImmersedPatch> {
        ImmersedPatch::from_spec(*self)
    }
}

/// Position and first/second partial derivatives of the embedding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub position: Vec3,
    pub du: Vec3,
    pub dv: Vec3,
    pub duu: Vec3,
    pub duv: Vec3,
    pub dvv: Vec3,
}

/// An immersed chart with analytic or finite-difference jets.
///
/// Immutable after construction; cheap to clone (the bowl profile is shared).
#[derive(Debug, Clone)]
pub struct ImmersedPatch {
    spec: PatchSpec,
    fd_step: f64,
    bowl: Option<Arc<BowlProfile>>,
}

fn check_slab(domain: &ChartDomain, width: f64) -> Result<()> {
    if domain.u_min < 0.0 || domain.u_max > width {
        return Err(Error::InvalidDomain(format!(
            "u-interval [{}, {}] must lie inside (0, {width}) (logarithmic singularity at the edges)",
            domain.u_min, domain.u_max
        )));
    }
    Ok(())
}

fn positive(field: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            reason: format!("must be positive and finite, got {x}"),
        })
    }
}

fn finite(field: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            reason: "must be finite".into(),
        })
    }
}

impl ImmersedPatch {
    pub fn from_spec(spec: PatchSpec) -> Result<Self> {
        spec.domain.validate()?;
        let domain = &spec.domain;
        let mut bowl = None;
        match spec.kind {
            SurfaceKind::VerticalPlane { x1, angle } => {
                finite("x1", x1)?;
                finite("angle", angle)?;
            }
            SurfaceKind::GrimReaper {} => check_slab(domain, PI)?,
            SurfaceKind::ReaperLevelSet {
                lambda,
                alpha,
                level_c,
            } => {
                let p = ReaperParams::new(lambda, alpha, level_c)?;
                check_slab(domain, p.slab_width())?;
            }
            SurfaceKind::PlaneFamily { t } => {
                positive("t", t)?;
                check_slab(domain, PI)?;
            }
            SurfaceKind::BowlSoliton {
                radius_max,
                ode_step,
            } => {
                let profile = BowlProfile::integrate(radius_max, ode_step)?;
                let corner = domain.u_min.abs().max(domain.u_max.abs()).hypot(domain.v_min.abs().max(domain.v_max.abs()));
                if corner > radius_max {
                    return Err(Error::InvalidDomain(format!(
                        "chart reaches radius {corner}, beyond the integrated profile ({radius_max})"
                    )));
                }
                bowl = Some(Arc::new(profile));
            }
            SurfaceKind::ParabolicCylinder { a } => finite("a", a)?,
        }
        if spec.offset.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "offset",
                reason: "must be finite".into(),
            });
        }
        let fd_step = match spec.fd_step {
            Some(h) => {
                positive("fd_step", h)?;
                h
            }
            None => {
                let (u0, u1) = domain.u_range();
                let (v0, v1) = domain.v_range();
                f64::EPSILON.powf(1.0 / 6.0) * (u1 - u0).min(v1 - v0).min(1.0)
            }
        };
        Ok(Self { spec, fd_step, bowl })
    }

    pub fn spec(&self) -> &PatchSpec {
        &self.spec
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.spec.kind
    }

    pub fn domain(&self) -> &ChartDomain {
        &self.spec.domain
    }

    pub fn jet_mode(&self) -> JetMode {
        self.spec.jet_mode
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn offset(&self) -> Vec3 {
        Vec3::from(self.spec.offset)
    }

    pub fn with_jet_mode(&self, mode: JetMode) -> Self {
        let mut p = self.clone();
        p.spec.jet_mode = mode;
        p
    }

    /// The same surface rigidly translated by `offset` (added to any existing one).
    pub fn translated(&self, offset: Vec3) -> Self {
        let mut p = self.clone();
        for i in 0..3 {
            p.spec.offset[i] += offset[i];
        }
        p
    }

    /// Width of the slab containing a reaper-type chart, if any.
    pub fn slab_width(&self) -> Option<f64> {
        match self.spec.kind {
            SurfaceKind::GrimReaper {} | SurfaceKind::PlaneFamily { .. } => Some(PI),
            SurfaceKind::ReaperLevelSet { lambda, .. } => Some(lambda * PI),
            _ => None,
        }
    }

    pub fn embed(&self, u: f64, v: f64) -> Vec3 {
        self.analytic_position(u, v) + self.offset()
    }

    fn analytic_position(&self, u: f64, v: f64) -> Vec3 {
        match self.spec.kind {
            SurfaceKind::VerticalPlane { x1, angle } => {
                let (s, c) = angle.sin_cos();
                Vec3::new(x1 - u * s, u * c, v)
            }
            SurfaceKind::BowlSoliton { .. } => {
                let r = u.hypot(v);
                Vec3::new(u, v, self.bowl().eval(r).0)
            }
            _ => Vec3::new(u, v, self.graph_height(u, v).0),
        }
    }

    fn bowl(&self) -> &BowlProfile {
        self.bowl.as_deref().expect("bowl patch carries its profile")
    }

    /// Height of a graph chart and its derivatives `(φ, φ_u, φ_v, φ_uu, φ_uv, φ_vv)`
    /// for the kinds with closed forms.
    fn graph_height(&self, u: f64, v: f64) -> (f64, f64, f64, f64, f64, f64) {
        match self.spec.kind {
            SurfaceKind::GrimReaper {} => {
                let (s, c) = u.sin_cos();
                (-s.ln(), -c / s, 0.0, 1.0 / (s * s), 0.0, 0.0)
            }
            SurfaceKind::ReaperLevelSet {
                lambda,
                alpha,
                level_c,
            } => {
                let lam2 = lambda * lambda;
                let (s, c) = (u / lambda).sin_cos();
                (
                    lam2 * level_c - alpha * v - lam2 * s.ln(),
                    -lambda * c / s,
                    -alpha,
                    1.0 / (s * s),
                    0.0,
                    0.0,
                )
            }
            SurfaceKind::PlaneFamily { t } => {
                let (s, c) = (u / 2.0).sin_cos();
                (
                    (t * t / 4.0).ln() - 2.0 * s.ln(),
                    -c / s,
                    0.0,
                    1.0 / (2.0 * s * s),
                    0.0,
                    0.0,
                )
            }
            SurfaceKind::ParabolicCylinder { a } => (a * u * u, 2.0 * a * u, 0.0, 2.0 * a, 0.0, 0.0),
            SurfaceKind::BowlSoliton { .. } => {
                let r = u.hypot(v);
                let (z, q, k) = self.bowl().cartesian_coefficients(r);
                (z, q * u, q * v, q + k * u * u, k * u * v, q + k * v * v)
            }
            SurfaceKind::VerticalPlane { .. } => unreachable!("vertical planes are not graphs"),
        }
    }

    pub fn analytic_jet(&self, u: f64, v: f64) -> Jet {
        let zero = Vec3::zeros();
        let jet = match self.spec.kind {
            SurfaceKind::VerticalPlane { x1, angle } => {
                let (s, c) = angle.sin_cos();
                Jet {
                    position: Vec3::new(x1 - u * s, u * c, v),
                    du: Vec3::new(-s, c, 0.0),
                    dv: Vec3::new(0.0, 0.0, 1.0),
                    duu: zero,
                    duv: zero,
                    dvv: zero,
                }
            }
            _ => {
                let (z, zu, zv, zuu, zuv, zvv) = self.graph_height(u, v);
                Jet {
                    position: Vec3::new(u, v, z),
                    du: Vec3::new(1.0, 0.0, zu),
                    dv: Vec3::new(0.0, 1.0, zv),
                    duu: Vec3::new(0.0, 0.0, zuu),
                    duv: Vec3::new(0.0, 0.0, zuv),
                    dvv: Vec3::new(0.0, 0.0, zvv),
                }
            }
        };
        Jet {
            position: jet.position + self.offset(),
            ..jet
        }
    }

    // Steps shrink near the outer chart bounds so that stencils stay inside
    // and resolve the 1/sin blow-up of reaper charts.
    fn fd_steps(&self, u: f64, v: f64) -> (f64, f64) {
        let (du, dv) = self.spec.domain.edge_distance(u, v);
        (self.fd_step.min(du / 40.0), self.fd_step.min(dv / 40.0))
    }

    /// Fourth-order central differences of [`embed`](Self::embed).
    pub fn fd_jet(&self, u: f64, v: f64) -> Jet {
        let (hu, hv) = self.fd_steps(u, v);
        let f = |a: f64, b: f64| self.embed(a, b);
        let d1 = |g: &dyn Fn(f64) -> Vec3, h: f64| (g(-2.0 * h) - g(2.0 * h) + 8.0 * (g(h) - g(-h))) / (12.0 * h);
        let d2 = |g: &dyn Fn(f64) -> Vec3, h: f64| {
            (-g(2.0 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2.0 * h)) / (12.0 * h * h)
        };
        let du = d1(&|s| f(u + s, v), hu);
        let dv = d1(&|s| f(u, v + s), hv);
        let duu = d2(&|s| f(u + s, v), hu);
        let dvv = d2(&|s| f(u, v + s), hv);
        let duv = d1(&|s| d1(&|t| f(u + s, v + t), hv), hu);
        Jet {
            position: f(u, v),
            du,
            dv,
            duu,
            duv,
            dvv,
        }
    }

    pub fn jet(&self, u: f64, v: f64) -> Jet {
        match self.spec.jet_mode {
            JetMode::Analytic => self.analytic_jet(u, v),
            JetMode::FiniteDifference => self.fd_jet(u, v),
        }
    }

    /// Position and first partials only.
    pub fn tangent_jet(&self, u: f64, v: f64) -> (Vec3, Vec3, Vec3) {
        match self.spec.jet_mode {
            JetMode::Analytic => {
                let j = self.analytic_jet(u, v);
                (j.position, j.du, j.dv)
            }
            JetMode::FiniteDifference => {
                let (hu, hv) = self.fd_steps(u, v);
                let f = |a: f64, b: f64| self.embed(a, b);
                let du = (f(u - 2.0 * hu, v) - f(u + 2.0 * hu, v) + 8.0 * (f(u + hu, v) - f(u - hu, v))) / (12.0 * hu);
                let dv = (f(u, v - 2.0 * hv) - f(u, v + 2.0 * hv) + 8.0 * (f(u, v + hv) - f(u, v - hv))) / (12.0 * hv);
                (f(u, v), du, dv)
            }
        }
    }
}

pub fn make_vertical_plane(x1_const: f64, domain: ChartDomain) -> Result<ImmersedPatch> {
    make_tilted_vertical_plane(x1_const, 0.0, domain)
}

/// Vertical plane through `(x1_const, 0, 0)` whose normal makes angle `angle` with `e1`.
pub fn make_tilted_vertical_plane(x1_const: f64, angle: f64, domain: ChartDomain) -> Result<ImmersedPatch> {
    PatchSpec::new(SurfaceKind::VerticalPlane { x1: x1_const, angle }, domain).build()
}

pub fn make_grim_reaper(domain: ChartDomain) -> Result<ImmersedPatch> {
    PatchSpec::new(SurfaceKind::GrimReaper {}, domain).build()
}

pub fn make_reaper_level_set(params: ReaperParams, domain: ChartDomain) -> Result<ImmersedPatch> {
    PatchSpec::new(
        SurfaceKind::ReaperLevelSet {
            lambda: params.lambda,
            alpha: params.alpha,
            level_c: params.level_c,
        },
        domain,
    )
    .build()
}

/// Bowl soliton over the square inscribed in the disk of radius `radius_max`.
pub fn make_bowl_soliton(radius_max: f64, ode_step: f64) -> Result<ImmersedPatch> {
    positive("radius_max", radius_max)?;
    let half = radius_max / std::f64::consts::SQRT_2;
    PatchSpec::new(
        SurfaceKind::BowlSoliton {
            radius_max,
            ode_step,
        },
        ChartDomain::square(half)?,
    )
    .build()
}

pub fn make_parabolic_cylinder(a: f64, domain: ChartDomain) -> Result<ImmersedPatch> {
    PatchSpec::new(SurfaceKind::ParabolicCylinder { a }, domain).build()
}
