use rayon::prelude::*;

use super::ordered_sum;
use crate::catalog::ImmersedPatch;
use crate::diffgeo::sample;
use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Test functions must stay below this on the boundary band.
pub const SUPPORT_TOLERANCE: f64 = 1e-12;

/// Scalar function on the chart with its chart gradient `(∂u, ∂v)`.
pub trait ChartFunction: Send + Sync {
    fn value(&self, u: f64, v: f64) -> f64;
    fn gradient(&self, u: f64, v: f64) -> [f64; 2];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroFunction;

impl ChartFunction for ZeroFunction {
    fn value(&self, _: f64, _: f64) -> f64 {
        0.0
    }
    fn gradient(&self, _: f64, _: f64) -> [f64; 2] {
        [0.0, 0.0]
    }
}

/// `A exp(-1/(1 - r²/ρ²))` for `r < ρ`, zero outside; `r` is the chart
/// distance to `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpFunction {
    pub center: [f64; 2],
    pub radius: f64,
    pub amplitude: f64,
}

impl BumpFunction {
    pub fn new(center: [f64; 2], radius: f64, amplitude: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "radius",
                reason: format!("must be positive, got {radius}"),
            });
        }
        Ok(Self {
            center,
            radius,
            amplitude,
        })
    }

    fn s(&self, u: f64, v: f64) -> f64 {
        let (du, dv) = (u - self.center[0], v - self.center[1]);
        (du * du + dv * dv) / (self.radius * self.radius)
    }
}

impl ChartFunction for BumpFunction {
    fn value(&self, u: f64, v: f64) -> f64 {
        let s = self.s(u, v);
        if s >= 1.0 {
            0.0
        } else {
            self.amplitude * (-1.0 / (1.0 - s)).exp()
        }
    }

    fn gradient(&self, u: f64, v: f64) -> [f64; 2] {
        let s = self.s(u, v);
        if s >= 1.0 {
            return [0.0, 0.0];
        }
        let dphi_ds = -self.value(u, v) / ((1.0 - s) * (1.0 - s));
        let k = 2.0 / (self.radius * self.radius);
        [dphi_ds * k * (u - self.center[0]), dphi_ds * k * (v - self.center[1])]
    }
}

/// Finite linear combination `Σ c_k φ_k`.
#[derive(Clone, Default)]
pub struct Combination<'a> {
    pub terms: Vec<(f64, &'a dyn ChartFunction)>,
}

impl<'a> Combination<'a> {
    pub fn new() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn plus(mut self, c: f64, f: &'a dyn ChartFunction) -> Self {
        self.terms.push((c, f));
        self
    }
}

impl ChartFunction for Combination<'_> {
    fn value(&self, u: f64, v: f64) -> f64 {
        self.terms.iter().map(|(c, f)| c * f.value(u, v)).sum()
    }

    fn gradient(&self, u: f64, v: f64) -> [f64; 2] {
        self.terms.iter().fold([0.0, 0.0], |acc, (c, f)| {
            let g = f.gradient(u, v);
            [acc[0] + c * g[0], acc[1] + c * g[1]]
        })
    }
}

// Boundary band: the perimeter of the sampling region and the outermost
// ring of grid nodes.
fn check_support(patch: &ImmersedPatch, f: &dyn ChartFunction, grid: &GridSpec) -> Result<()> {
    let domain = patch.domain();
    let (u0, u1) = domain.u_range();
    let (v0, v1) = domain.v_range();
    let n = 4 * grid.nu.max(grid.nv);
    let mut pts = Vec::with_capacity(4 * n);
    for k in 0..n {
        let s = k as f64 / (n - 1) as f64;
        let (u, v) = (u0 + s * (u1 - u0), v0 + s * (v1 - v0));
        pts.extend([(u, v0), (u, v1), (u0, v), (u1, v)]);
    }
    let nodes = grid.nodes(domain);
    for i in 0..grid.nu {
        for j in 0..grid.nv {
            if i == 0 || j == 0 || i + 1 == grid.nu || j + 1 == grid.nv {
                pts.push(nodes[i * grid.nv + j]);
            }
        }
    }
    for (u, v) in pts {
        let value = f.value(u, v);
        if !(value.abs() <= SUPPORT_TOLERANCE) {
            return Err(Error::TestFunctionSupport { u, v, value });
        }
    }
    Ok(())
}

/// `Q_f(φ, ψ) = ∫ (g^{ij} ∂_i φ ∂_j ψ - |A|² φ ψ) e^{x3} dA` with `f = -x3`.
pub fn stability_bilinear(patch: &ImmersedPatch, phi: &dyn ChartFunction, psi: &dyn ChartFunction, grid: &GridSpec) -> Result<f64> {
    grid.validate()?;
    check_support(patch, phi, grid)?;
    check_support(patch, psi, grid)?;
    let nodes = grid.quadrature_nodes(patch.domain());
    let terms: Vec<f64> = nodes
        .par_iter()
        .map(|n| -> Result<f64> {
            let (a, b) = (phi.value(n.u, n.v), psi.value(n.u, n.v));
            let (da, db) = (phi.gradient(n.u, n.v), psi.gradient(n.u, n.v));
            if a == 0.0 && b == 0.0 && da == [0.0, 0.0] && db == [0.0, 0.0] {
                return Ok(0.0);
            }
            let s = sample(patch, n.u, n.v)?;
            let gi = s.metric_inv;
            let grad = gi[(0, 0)] * da[0] * db[0]
                + gi[(0, 1)] * (da[0] * db[1] + da[1] * db[0])
                + gi[(1, 1)] * da[1] * db[1];
            Ok(n.weight * s.area_element() * s.position.z.exp() * (grad - s.second_form_norm_sq() * a * b))
        })
        .collect::<Result<_>>()?;
    Ok(ordered_sum(&terms))
}

pub fn stability_form(patch: &ImmersedPatch, phi: &dyn ChartFunction, grid: &GridSpec) -> Result<f64> {
    stability_bilinear(patch, phi, phi, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_grim_reaper, make_vertical_plane, ChartDomain};
    use crate::grid::Quadrature;
    use std::f64::consts::{FRAC_PI_2, PI};

    // Q on the reaper for the apex bump of chart radius 1.2, unit amplitude;
    // 96x96 GL8 and a 4000² midpoint sum of the reduced integrand agree to 1e-12.
    const REAPER_APEX_BUMP_Q: f64 = 0.786662043499;

    #[test]
    fn bump_gradient_matches_differences() {
        let b = BumpFunction::new([0.2, -0.1], 0.8, 1.5).unwrap();
        for (u, v) in [(0.3, 0.1), (-0.3, 0.2), (0.7, -0.1)] {
            let h = 1e-6;
            let fu = (b.value(u + h, v) - b.value(u - h, v)) / (2.0 * h);
            let fv = (b.value(u, v + h) - b.value(u, v - h)) / (2.0 * h);
            let g = b.gradient(u, v);
            assert!((g[0] - fu).abs() < 1e-7 && (g[1] - fv).abs() < 1e-7);
        }
        assert_eq!(b.value(2.0, 2.0), 0.0);
        assert!(BumpFunction::new([0.0, 0.0], 0.0, 1.0).is_err());
    }

    #[test]
    fn plane_form_is_positive_and_zero_is_zero() {
        let p = make_vertical_plane(0.0, ChartDomain::square(2.0).unwrap()).unwrap();
        let grid = GridSpec::new(40, 40).unwrap().with_quadrature(Quadrature::GaussLegendre(3));
        let b = BumpFunction::new([0.3, 0.2], 1.0, 1.0).unwrap();
        assert!(stability_form(&p, &b, &grid).unwrap() > 0.0);
        assert_eq!(stability_form(&p, &ZeroFunction, &grid).unwrap(), 0.0);
    }

    #[test]
    fn rejects_boundary_mass() {
        let p = make_vertical_plane(0.0, ChartDomain::square(1.0).unwrap()).unwrap();
        let grid = GridSpec::new(16, 16).unwrap();
        let b = BumpFunction::new([0.0, 0.0], 1.5, 1.0).unwrap();
        assert!(matches!(stability_form(&p, &b, &grid), Err(Error::TestFunctionSupport { .. })));
    }

    #[test]
    fn combination_is_linear() {
        let a = BumpFunction::new([0.0, 0.0], 1.0, 1.0).unwrap();
        let b = BumpFunction::new([0.5, 0.0], 1.0, 2.0).unwrap();
        let c = Combination::new().plus(2.0, &a).plus(-1.0, &b);
        assert_eq!(c.value(0.2, 0.1), 2.0 * a.value(0.2, 0.1) - b.value(0.2, 0.1));
    }

    #[test]
    fn reaper_apex_bump_against_reduced_integral() {
        // on the reaper, Q = ∫∫ (φ_u² + φ_v²/sin²u − φ²) du dv
        let d = ChartDomain::new(0.0, PI, -2.0, 2.0).unwrap();
        let reaper = make_grim_reaper(d).unwrap();
        let b = BumpFunction::new([FRAC_PI_2, 0.0], 1.2, 1.0).unwrap();
        let grid = GridSpec::new(96, 96).unwrap().with_quadrature(Quadrature::GaussLegendre(8));
        let q = stability_form(&reaper, &b, &grid).unwrap();
        let n = 2000;
        let h = 2.4 / n as f64;
        let mut oracle = 0.0;
        for i in 0..n {
            for j in 0..n {
                let u = FRAC_PI_2 - 1.2 + (i as f64 + 0.5) * h;
                let v = -1.2 + (j as f64 + 0.5) * h;
                let g = b.gradient(u, v);
                let s = u.sin();
                oracle += h * h * (g[0] * g[0] + g[1] * g[1] / (s * s) - b.value(u, v).powi(2));
            }
        }
        assert!((q - oracle).abs() < 1e-9, "{q} vs {oracle}");
        assert!((q - REAPER_APEX_BUMP_Q).abs() < 1e-9);
    }
}
