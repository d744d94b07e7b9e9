use std::f64::consts::PI;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use reaper_core::catalog::{ChartDomain, JetMode, PatchSpec, SurfaceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceName {
    Plane,
    GrimReaper,
    LevelSet,
    PlaneFamily,
    Bowl,
    ParabolicCylinder,
}

/// Surface selection flags shared by several commands.
#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_enum)]
    pub surface: Option<SurfaceName>,
    /// Plane offset along e1.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x1: f64,
    /// Plane normal angle from e1, radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub angle: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub level_c: f64,
    /// Leaf parameter of the plane family.
    #[arg(long = "leaf-t", default_value_t = 1.0)]
    pub leaf_t: f64,
    #[arg(long, default_value_t = 2.0)]
    pub radius_max: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub ode_step: f64,
    /// Coefficient of the parabolic cylinder x3 = a x1².
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a: f64,
    /// Chart bounds `u_min,u_max,v_min,v_max`.
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    #[arg(long)]
    pub margin: Option<f64>,
    #[arg(long, value_enum, default_value_t = JetArg::Analytic)]
    pub jet_mode: JetArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JetArg {
    Analytic,
    Fd,
}

pub fn parse_list(field: &str, s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| anyhow::anyhow!("{field}: `{x}` is not a number"))
        })
        .collect()
}

pub fn parse_vec3(field: &str, s: &str) -> Result<[f64; 3]> {
    let v = parse_list(field, s)?;
    match v.as_slice() {
        [a, b, c] => Ok([*a, *b, *c]),
        _ => bail!("{field}: expected three comma-separated numbers, got `{s}`"),
    }
}

impl SurfaceArgs {
    pub fn spec(&self, name: SurfaceName) -> Result<PatchSpec> {
        let kind = match name {
            SurfaceName::Plane => SurfaceKind::VerticalPlane {
                x1: self.x1,
                angle: self.angle,
            },
            SurfaceName::GrimReaper => SurfaceKind::GrimReaper {},
            SurfaceName::LevelSet => SurfaceKind::ReaperLevelSet {
                lambda: self.lambda,
                alpha: self.alpha,
                level_c: self.level_c,
            },
            SurfaceName::PlaneFamily => SurfaceKind::PlaneFamily { t: self.leaf_t },
            SurfaceName::Bowl => SurfaceKind::BowlSoliton {
                radius_max: self.radius_max,
                ode_step: self.ode_step,
            },
            SurfaceName::ParabolicCylinder => SurfaceKind::ParabolicCylinder { a: self.a },
        };
        let (u0, u1, v0, v1) = match &self.domain {
            Some(d) => match parse_list("domain", d)?.as_slice() {
                [a, b, c, e] => (*a, *b, *c, *e),
                _ => bail!("domain: expected `u_min,u_max,v_min,v_max`"),
            },
            None => match name {
                SurfaceName::GrimReaper | SurfaceName::PlaneFamily => (0.0, PI, -1.0, 1.0),
                SurfaceName::LevelSet => (0.0, self.lambda * PI, -1.0, 1.0),
                SurfaceName::Bowl => {
                    let h = self.radius_max / std::f64::consts::SQRT_2;
                    (-h, h, -h, h)
                }
                SurfaceName::Plane | SurfaceName::ParabolicCylinder => (-1.0, 1.0, -1.0, 1.0),
            },
        };
        let domain = match self.margin {
            Some(m) => ChartDomain::with_margin(u0, u1, v0, v1, m)?,
            None => ChartDomain::new(u0, u1, v0, v1)?,
        };
        let mut spec = PatchSpec::new(kind, domain);
        spec.jet_mode = match self.jet_mode {
            JetArg::Analytic => JetMode::Analytic,
            JetArg::Fd => JetMode::FiniteDifference,
        };
        Ok(spec)
    }
}
