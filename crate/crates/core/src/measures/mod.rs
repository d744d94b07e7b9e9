//! Quadrature estimators: the Gaussian area functional and its entropy lower
//! bound, extrinsic and intrinsic volume growth, and the weighted stability
//! form.

mod entropy;
mod fmm;
mod stability;
mod volume;

pub use crate::grid::GridSpec;
pub use entropy::{boundary_distance, entropy_estimate, f_functional, EntropyEstimate, FValue, TAIL_TOLERANCE};
pub use fmm::{fast_march, DistanceField};
pub use stability::{
    stability_bilinear, stability_form, BumpFunction, ChartFunction, Combination, ZeroFunction, SUPPORT_TOLERANCE,
};
pub use volume::{extrinsic_volume_ratio, fit_volume_growth, intrinsic_volume_growth, VolumeGrowthFit};

use rayon::prelude::*;

use crate::catalog::ImmersedPatch;
use crate::grid::QuadNode;
use crate::Vec3;

/// Position and area element at a quadrature node.
#[derive(Debug, Clone, Copy)]
pub(crate) struct AreaNode {
    pub position: Vec3,
    /// Quadrature weight times `sqrt(det g)`.
    pub area: f64,
}

pub(crate) fn area_nodes(patch: &ImmersedPatch, nodes: &[QuadNode]) -> Vec<AreaNode> {
    nodes
        .par_iter()
        .map(|n| {
            let (x, xu, xv) = patch.tangent_jet(n.u, n.v);
            AreaNode {
                position: x,
                area: n.weight * xu.cross(&xv).norm(),
            }
        })
        .collect()
}

/// Sum in index order, so parallel evaluation stays bit-reproducible.
pub(crate) fn ordered_sum(values: &[f64]) -> f64 {
    values.iter().sum()
}

/// Linear ramp from 1 (well inside) to 0 (well outside) across a band of
/// width `eps` around `level`; turns a sharp indicator into a second-order
/// accurate quadrature weight.
pub(crate) fn ramp(level: f64, value: f64, eps: f64) -> f64 {
    (0.5 + (level - value) / eps).clamp(0.0, 1.0)
}
