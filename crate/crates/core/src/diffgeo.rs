//! Pointwise differential geometry on chart samples.
//!
//! Conventions: `II(X, Y) = <∂²x, ν>` with `ν = x_u × x_v / |x_u × x_v|`,
//! and `H = tr(g⁻¹ II)` is the sum (not the mean) of the principal
//! curvatures. With these choices the grim reaper has `H = <e3, ν> = sin u`.

use std::io::{self, Write};

use nalgebra::Matrix2;
use rayon::prelude::*;

use crate::catalog::{ChartDomain, ImmersedPatch, Jet};
use crate::error::{Error, Result};
use crate::fields::AmbientScalarField;
use crate::grid::GridSpec;
use crate::Vec3;

const MIN_METRIC_DET: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub u: f64,
    pub v: f64,
    pub position: Vec3,
    pub partials: [Vec3; 2],
    /// `[x_uu, x_uv, x_vv]`.
    pub second_partials: [Vec3; 3],
    pub normal: Vec3,
    pub metric: Matrix2<f64>,
    pub metric_inv: Matrix2<f64>,
    pub second_form: Matrix2<f64>,
    pub mean_curvature: f64,
}

impl SurfaceSample {
    pub fn from_jet(jet: &Jet, u: f64, v: f64) -> Result<Self> {
        let (xu, xv) = (jet.du, jet.dv);
        let metric = Matrix2::new(xu.dot(&xu), xu.dot(&xv), xu.dot(&xv), xv.dot(&xv));
        let det = metric.determinant();
        if !(det > MIN_METRIC_DET) {
            return Err(Error::Degenerate { u, v, det });
        }
        let metric_inv = Matrix2::new(metric[(1, 1)], -metric[(0, 1)], -metric[(1, 0)], metric[(0, 0)]) / det;
        let normal = xu.cross(&xv).normalize();
        let (l, m, n) = (jet.duu.dot(&normal), jet.duv.dot(&normal), jet.dvv.dot(&normal));
        let second_form = Matrix2::new(l, m, m, n);
        let mean_curvature = (metric_inv * second_form).trace();
        Ok(Self {
            u,
            v,
            position: jet.position,
            partials: [xu, xv],
            second_partials: [jet.duu, jet.duv, jet.dvv],
            normal,
            metric,
            metric_inv,
            second_form,
            mean_curvature,
        })
    }

    /// Shape operator `g⁻¹ II` in chart coordinates.
    pub fn shape_operator(&self) -> Matrix2<f64> {
        self.metric_inv * self.second_form
    }

    /// `|A|² = tr(S²)`, the sum of squared principal curvatures.
    pub fn second_form_norm_sq(&self) -> f64 {
        let s = self.shape_operator();
        (s * s).trace()
    }

    pub fn area_element(&self) -> f64 {
        self.metric.determinant().sqrt()
    }

    /// Orthogonal projection onto the tangent plane.
    pub fn tangential(&self, w: &Vec3) -> Vec3 {
        w - self.normal * w.dot(&self.normal)
    }

    /// `<e_i, ν>`, zero-based axis.
    pub fn normal_component(&self, axis: usize) -> f64 {
        self.normal[axis]
    }
}

pub fn sample(patch: &ImmersedPatch, u: f64, v: f64) -> Result<SurfaceSample> {
    if !patch.domain().contains(u, v) {
        return Err(Error::OutsideDomain { u, v });
    }
    SurfaceSample::from_jet(&patch.jet(u, v), u, v)
}

/// Samples at the grid's cell centres, in grid order.
pub fn sample_grid(patch: &ImmersedPatch, grid: &GridSpec) -> Vec<Result<SurfaceSample>> {
    grid.nodes(patch.domain())
        .into_par_iter()
        .map(|(u, v)| sample(patch, u, v))
        .collect()
}

/// Tangential part of the ambient gradient, as a vector in `R^3`.
pub fn intrinsic_gradient(sample: &SurfaceSample, field: &dyn AmbientScalarField) -> Vec3 {
    sample.tangential(&field.gradient(&sample.position))
}

/// Default step for [`surface_laplacian`]: `1e-4` times the chart scale.
pub fn default_laplacian_step(domain: &ChartDomain) -> f64 {
    1e-4 * domain.scale()
}

// Metric-weighted flux √det g · g^{ij} ∂_j φ at a chart point.
fn flux(patch: &ImmersedPatch, field: &dyn AmbientScalarField, u: f64, v: f64) -> Result<(f64, f64, f64)> {
    let (pos, xu, xv) = patch.tangent_jet(u, v);
    let g = Matrix2::new(xu.dot(&xu), xu.dot(&xv), xu.dot(&xv), xv.dot(&xv));
    let det = g.determinant();
    if !(det > MIN_METRIC_DET) {
        return Err(Error::Degenerate { u, v, det });
    }
    let grad = field.gradient(&pos);
    let (a, b) = (grad.dot(&xu), grad.dot(&xv));
    let sq = det.sqrt();
    let fu = sq * (g[(1, 1)] * a - g[(0, 1)] * b) / det;
    let fv = sq * (-g[(1, 0)] * a + g[(0, 0)] * b) / det;
    if !(fu.is_finite() && fv.is_finite()) {
        return Err(Error::FieldDomain { u, v });
    }
    Ok((fu, fv, sq))
}

/// Laplace–Beltrami operator of `field` restricted to the surface,
/// `(1/√g) ∂_i(√g g^{ij} ∂_j φ)`.
///
/// The flux is assembled from the field's analytic gradient and the chart
/// partials; its divergence is a central difference, Richardson-extrapolated
/// once (steps `h` and `h/2`). Near the outer chart bounds the step shrinks
/// to 1/50 of the distance to the edge.
pub fn surface_laplacian(
    patch: &ImmersedPatch,
    field: &dyn AmbientScalarField,
    u: f64,
    v: f64,
    h_fd: f64,
) -> Result<f64> {
    if !(h_fd.is_finite() && h_fd > 0.0) {
        return Err(Error::InvalidParameter {
            field: "h_fd",
            reason: format!("must be positive, got {h_fd}"),
        });
    }
    if !patch.domain().contains(u, v) {
        return Err(Error::OutsideDomain { u, v });
    }
    let (du, dv) = patch.domain().edge_distance(u, v);
    let (hu, hv) = (h_fd.min(du / 50.0), h_fd.min(dv / 50.0));
    let divergence = |hu: f64, hv: f64| -> Result<f64> {
        let (fu_p, _, _) = flux(patch, field, u + hu, v)?;
        let (fu_m, _, _) = flux(patch, field, u - hu, v)?;
        let (_, fv_p, _) = flux(patch, field, u, v + hv)?;
        let (_, fv_m, _) = flux(patch, field, u, v - hv)?;
        Ok((fu_p - fu_m) / (2.0 * hu) + (fv_p - fv_m) / (2.0 * hv))
    };
    let coarse = divergence(hu, hv)?;
    let fine = divergence(hu / 2.0, hv / 2.0)?;
    let (_, _, sq) = flux(patch, field, u, v)?;
    let lap = (4.0 * fine - coarse) / 3.0 / sq;
    if lap.is_finite() {
        Ok(lap)
    } else {
        Err(Error::FieldDomain { u, v })
    }
}

/// Drift Laplacian `Δ_h φ = Δφ − <∇φ, ∇h>`.
pub fn weighted_laplacian(
    patch: &ImmersedPatch,
    field: &dyn AmbientScalarField,
    weight: &dyn AmbientScalarField,
    u: f64,
    v: f64,
    h_fd: f64,
) -> Result<f64> {
    let s = sample(patch, u, v)?;
    let lap = surface_laplacian(patch, field, u, v, h_fd)?;
    let drift = intrinsic_gradient(&s, field).dot(&intrinsic_gradient(&s, weight));
    let out = lap - drift;
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::FieldDomain { u, v })
    }
}

/// CSV with columns `u,v,x,y,z,nx,ny,nz,H`.
pub fn write_samples_csv<W: Write>(mut w: W, samples: &[SurfaceSample]) -> io::Result<()> {
    writeln!(w, "u,v,x,y,z,nx,ny,nz,H")?;
    for s in samples {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            s.u, s.v, s.position.x, s.position.y, s.position.z, s.normal.x, s.normal.y, s.normal.z, s.mean_curvature
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_grim_reaper, make_tilted_vertical_plane, make_vertical_plane};
    use crate::fields::{FnField, LinearField};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn reaper() -> ImmersedPatch {
        make_grim_reaper(ChartDomain::new(0.0, PI, -1.0, 1.0).unwrap()).unwrap()
    }

    fn plane() -> ImmersedPatch {
        make_vertical_plane(FRAC_PI_2, ChartDomain::square(1.0).unwrap()).unwrap()
    }

    #[test]
    fn reaper_apex_sample() {
        let s = sample(&reaper(), FRAC_PI_2, 0.0).unwrap();
        assert!((s.normal - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-15);
        assert!((s.mean_curvature - 1.0).abs() < 1e-15);
        let s = sample(&reaper(), PI / 6.0, 0.0).unwrap();
        assert!((s.normal.z - 0.5).abs() < 1e-15);
        assert!((s.normal.x - (PI / 6.0).cos()).abs() < 1e-15);
        assert!((s.mean_curvature - 0.5).abs() < 1e-14);
    }

    #[test]
    fn plane_sample() {
        let s = sample(&plane(), 0.3, -0.2).unwrap();
        assert_eq!(s.mean_curvature, 0.0);
        assert_eq!(s.normal, Vec3::new(1.0, 0.0, 0.0));
        let t = sample(&make_tilted_vertical_plane(1.0, 0.3, ChartDomain::square(1.0).unwrap()).unwrap(), 0.1, 0.1).unwrap();
        assert!((t.normal - Vec3::new(0.3f64.cos(), 0.3f64.sin(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sample_invariants_hold() {
        let p = reaper();
        for i in 1..20 {
            let s = sample(&p, PI * i as f64 / 20.0, 0.1).unwrap();
            assert!((s.normal.norm() - 1.0).abs() < 1e-12);
            assert!(s.normal.dot(&s.partials[0]).abs() < 1e-10);
            assert!(s.normal.dot(&s.partials[1]).abs() < 1e-10);
            assert!((s.metric * s.metric_inv - Matrix2::identity()).norm() < 1e-10);
            assert!((s.normal.norm_squared() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn outside_domain_is_rejected() {
        assert!(matches!(sample(&reaper(), 0.0, 0.0), Err(Error::OutsideDomain { .. })));
        let x = LinearField::coordinate(0);
        assert!(surface_laplacian(&reaper(), &x, 4.0, 0.0, 1e-4).is_err());
    }

    #[test]
    fn intrinsic_gradient_on_plane() {
        let s = sample(&plane(), 0.0, 0.0).unwrap();
        assert_eq!(intrinsic_gradient(&s, &LinearField::coordinate(2)), Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(intrinsic_gradient(&s, &LinearField::coordinate(0)), Vec3::zeros());
        let r = sample(&reaper(), FRAC_PI_2, 0.0).unwrap();
        assert!((intrinsic_gradient(&r, &LinearField::coordinate(0)).norm_squared() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn flat_laplacians() {
        let p = plane();
        let h = default_laplacian_step(p.domain());
        let x2 = LinearField::coordinate(1);
        assert!(surface_laplacian(&p, &x2, 0.2, 0.3, h).unwrap().abs() < 1e-8);
        let sq = FnField::new(|p| p.y * p.y, |p| Vec3::new(0.0, 2.0 * p.y, 0.0));
        assert!((surface_laplacian(&p, &sq, 0.2, 0.3, h).unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn reaper_height_laplacian() {
        let p = reaper();
        let h = default_laplacian_step(p.domain());
        let x3 = LinearField::coordinate(2);
        assert!((surface_laplacian(&p, &x3, FRAC_PI_2, 0.0, h).unwrap() - 1.0).abs() < 1e-5);
        // Δx = H ν componentwise: Δx3 = sin² u.
        for u in [0.3, 1.0, 2.5] {
            let lap = surface_laplacian(&p, &x3, u, 0.2, h).unwrap();
            assert!((lap - u.sin().powi(2)).abs() < 1e-7, "u={u}: {lap}");
        }
    }

    #[test]
    fn zero_weight_reduces_to_laplacian() {
        let p = reaper();
        let h = default_laplacian_step(p.domain());
        let x1 = LinearField::coordinate(0);
        let zero = LinearField::constant(0.0);
        let a = weighted_laplacian(&p, &x1, &zero, 1.1, 0.0, h).unwrap();
        let b = surface_laplacian(&p, &x1, 1.1, 0.0, h).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_header_and_rows() {
        let s = sample(&plane(), 0.0, 0.0).unwrap();
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, &[s]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "u,v,x,y,z,nx,ny,nz,H");
        assert_eq!(lines.next().unwrap().split(',').count(), 9);
    }
}
