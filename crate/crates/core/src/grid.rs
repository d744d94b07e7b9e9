//! Sampling and quadrature grids over chart domains.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::ChartDomain;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Quadrature {
    Midpoint,
    /// `k`-point Gauss–Legendre rule per cell.
    GaussLegendre(usize),
}

impl fmt::Display for Quadrature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quadrature::Midpoint => write!(f, "midpoint"),
            Quadrature::GaussLegendre(k) => write!(f, "gauss-legendre-{k}"),
        }
    }
}

impl FromStr for Quadrature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "midpoint" {
            return Ok(Quadrature::Midpoint);
        }
        s.strip_prefix("gauss-legendre-")
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|k| (1..=32).contains(k))
            .map(Quadrature::GaussLegendre)
            .ok_or_else(|| Error::InvalidParameter {
                field: "quadrature",
                reason: format!("expected `midpoint` or `gauss-legendre-<1..32>`, got `{s}`"),
            })
    }
}

impl From<Quadrature> for String {
    fn from(q: Quadrature) -> String {
        q.to_string()
    }
}

impl TryFrom<String> for Quadrature {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Node placement along the `u` axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    #[default]
    Uniform,
    /// `u = c + w tanh(S s)/tanh(S)`: nodes cluster geometrically towards
    /// both `u` edges, with the innermost spacing comparable to the margin.
    /// Suited to charts with a `ln sin` singularity at the `u` edges.
    Graded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nu: usize,
    pub nv: usize,
    pub quadrature: Quadrature,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadNode {
    pub u: f64,
    pub v: f64,
    pub weight: f64,
}

/// Monotone map from the computational interval `[-1, 1]` onto `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisMap {
    center: f64,
    half: f64,
    stretch: Option<f64>,
}

impl AxisMap {
    pub fn new(lo: f64, hi: f64, spacing: Spacing, margin: f64) -> Self {
        let half = (hi - lo) / 2.0;
        let stretch = match spacing {
            Spacing::Uniform => None,
            Spacing::Graded => Some((0.5 * (2.0 * half / margin).ln()).max(1.0)),
        };
        Self {
            center: (lo + hi) / 2.0,
            half,
            stretch,
        }
    }

    /// `(u(s), du/ds)`.
    pub fn map(&self, s: f64) -> (f64, f64) {
        match self.stretch {
            None => (self.center + self.half * s, self.half),
            Some(k) => {
                let th = k.tanh();
                let ts = (k * s).tanh();
                (self.center + self.half * ts / th, self.half * k * (1.0 - ts * ts) / th)
            }
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton iteration on `P_k`).
pub fn gauss_legendre(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    for i in 0..k.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for n in 2..=k {
                let p2 = ((2 * n - 1) as f64 * x * p1 - (n - 1) as f64 * p0) / n as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[k - 1 - i] = x;
        weights[i] = w;
        weights[k - 1 - i] = w;
    }
    if k % 2 == 1 {
        nodes[k / 2] = 0.0;
    }
    (nodes, weights)
}

impl GridSpec {
    pub fn new(nu: usize, nv: usize) -> Result<Self> {
        let g = Self {
            nu,
            nv,
            quadrature: Quadrature::Midpoint,
            spacing: Spacing::Uniform,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_quadrature(mut self, q: Quadrature) -> Self {
        self.quadrature = q;
        self
    }

    pub fn with_spacing(mut self, s: Spacing) -> Self {
        self.spacing = s;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu < 8 || self.nv < 8 {
            return Err(Error::InvalidParameter {
                field: "grid",
                reason: format!("needs at least 8x8 nodes, got {}x{}", self.nu, self.nv),
            });
        }
        if let Quadrature::GaussLegendre(k) = self.quadrature {
            if !(1..=32).contains(&k) {
                return Err(Error::InvalidParameter {
                    field: "quadrature",
                    reason: format!("Gauss-Legendre order {k} outside 1..=32"),
                });
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        let mut s = format!("{}x{} {}", self.nu, self.nv, self.quadrature);
        if self.spacing == Spacing::Graded {
            s.push_str(" graded");
        }
        s
    }

    pub fn u_map(&self, domain: &ChartDomain) -> AxisMap {
        let (lo, hi) = domain.u_range();
        AxisMap::new(lo, hi, self.spacing, domain.margin)
    }

    pub fn v_map(&self, domain: &ChartDomain) -> AxisMap {
        let (lo, hi) = domain.v_range();
        AxisMap::new(lo, hi, Spacing::Uniform, domain.margin)
    }

    /// Cell-centre nodes, `u` index outer, `v` index inner.
    pub fn nodes(&self, domain: &ChartDomain) -> Vec<(f64, f64)> {
        let (um, vm) = (self.u_map(domain), self.v_map(domain));
        let mut out = Vec::with_capacity(self.nu * self.nv);
        for i in 0..self.nu {
            let u = um.map(-1.0 + (2.0 * i as f64 + 1.0) / self.nu as f64).0;
            for j in 0..self.nv {
                out.push((u, vm.map(-1.0 + (2.0 * j as f64 + 1.0) / self.nv as f64).0));
            }
        }
        out
    }

    /// Tensor-product rule over the sampling region: `∫ f du dv ≈ Σ w f(u, v)`.
    pub fn quadrature_nodes(&self, domain: &ChartDomain) -> Vec<QuadNode> {
        let (ref_x, ref_w) = match self.quadrature {
            Quadrature::Midpoint => (vec![0.0], vec![2.0]),
            Quadrature::GaussLegendre(k) => gauss_legendre(k),
        };
        let axis = |map: AxisMap, n: usize| -> Vec<(f64, f64)> {
            let ds = 2.0 / n as f64;
            let mut pts = Vec::with_capacity(n * ref_x.len());
            for c in 0..n {
                let s0 = -1.0 + c as f64 * ds;
                for (x, w) in ref_x.iter().zip(&ref_w) {
                    let (u, jac) = map.map(s0 + (x + 1.0) * ds / 2.0);
                    pts.push((u, w * ds / 2.0 * jac));
                }
            }
            pts
        };
        let us = axis(self.u_map(domain), self.nu);
        let vs = axis(self.v_map(domain), self.nv);
        let mut out = Vec::with_capacity(us.len() * vs.len());
        for &(u, wu) in &us {
            for &(v, wv) in &vs {
                out.push(QuadNode { u, v, weight: wu * wv });
            }
        }
        out
    }
}

impl FromStr for GridSpec {
    type Err = Error;
    /// Parses `NUxNV`, e.g. `40x40`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter {
            field: "grid",
            reason: format!("expected NUxNV, got `{s}`"),
        };
        let (a, b) = s.split_once('x').ok_or_else(bad)?;
        let nu = a.trim().parse().map_err(|_| bad())?;
        let nv = b.trim().parse().map_err(|_| bad())?;
        GridSpec::new(nu, nv)
    }
}
