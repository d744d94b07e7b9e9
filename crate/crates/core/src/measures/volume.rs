use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{area_nodes, boundary_distance, fast_march, ordered_sum, ramp};
use crate::catalog::ImmersedPatch;
use crate::error::{Error, Result};
use crate::fields::AmbientScalarField;
use crate::grid::{GridSpec, Quadrature};
use crate::Vec3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeGrowthFit {
    pub radii: Vec<f64>,
    pub volumes: Vec<f64>,
    /// Least-squares slope of `ln vol` against `ln r`.
    pub slope: f64,
    pub intercept: f64,
}

impl VolumeGrowthFit {
    /// `vol / r²` per radius.
    pub fn ratios(&self) -> Vec<f64> {
        self.radii.iter().zip(&self.volumes).map(|(r, v)| v / (r * r)).collect()
    }

    pub fn volumes_nondecreasing(&self) -> bool {
        self.volumes.windows(2).all(|w| w[1] >= w[0])
    }
}

fn validate_radii(radii: &[f64]) -> Result<()> {
    if radii.len() < 3 {
        return Err(Error::DegenerateFit(radii.len()));
    }
    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter {
            field: "radii",
            reason: "must be positive and strictly increasing".into(),
        });
    }
    Ok(())
}

pub fn fit_volume_growth(radii: &[f64], volumes: &[f64]) -> Result<VolumeGrowthFit> {
    validate_radii(radii)?;
    if volumes.len() != radii.len() || volumes.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::InvalidParameter {
            field: "volumes",
            reason: "need one positive volume per radius".into(),
        });
    }
    let n = radii.len() as f64;
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = volumes.iter().map(|v| v.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    Ok(VolumeGrowthFit {
        radii: radii.to_vec(),
        volumes: volumes.to_vec(),
        slope,
        intercept: my - slope * mx,
    })
}

/// Areas of `patch ∩ B_R(center)` for each radius, and their log-log slope.
///
/// The ball indicator is smoothed over one local cell width.
pub fn extrinsic_volume_ratio(patch: &ImmersedPatch, center: &Vec3, radii: &[f64], grid: &GridSpec) -> Result<VolumeGrowthFit> {
    validate_radii(radii)?;
    grid.validate()?;
    let reach = boundary_distance(patch, center, 4 * grid.nu.max(grid.nv));
    let r_max = radii[radii.len() - 1];
    if r_max >= reach {
        return Err(Error::Reach { radius: r_max, reach });
    }
    let nodes = area_nodes(patch, &grid.quadrature_nodes(patch.domain()));
    let volumes = radii
        .iter()
        .map(|&r| {
            let terms: Vec<f64> = nodes
                .par_iter()
                .map(|n| n.area * ramp(r, (n.position - center).norm(), n.area.sqrt()))
                .collect();
            ordered_sum(&terms)
        })
        .collect::<Vec<_>>();
    fit_volume_growth(radii, &volumes)
}

/// Areas of intrinsic balls around the chart point `origin`, weighted by
/// `e^{-h}` when a weight `h` is given. Distances come from fast marching on
/// the grid; areas use the midpoint rule on the same cells.
pub fn intrinsic_volume_growth(
    patch: &ImmersedPatch,
    origin: (f64, f64),
    radii: &[f64],
    weight: Option<&dyn AmbientScalarField>,
    grid: &GridSpec,
) -> Result<VolumeGrowthFit> {
    validate_radii(radii)?;
    let field = fast_march(patch, grid, origin)?;
    let reach = field.reach();
    let r_max = radii[radii.len() - 1];
    if r_max >= reach {
        return Err(Error::Reach { radius: r_max, reach });
    }
    let cells = grid.with_quadrature(Quadrature::Midpoint).quadrature_nodes(patch.domain());
    let nodes = area_nodes(patch, &cells);
    let density: Vec<f64> = nodes
        .par_iter()
        .map(|n| n.area * weight.map_or(1.0, |h| (-h.value(&n.position)).exp()))
        .collect();
    let volumes = radii
        .iter()
        .map(|&r| {
            let terms: Vec<f64> = nodes
                .par_iter()
                .zip(&density)
                .zip(&field.values)
                .map(|((n, d), t)| d * ramp(r, *t, n.area.sqrt()))
                .collect();
            ordered_sum(&terms)
        })
        .collect::<Vec<_>>();
    fit_volume_growth(radii, &volumes)
}
