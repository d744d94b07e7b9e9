use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{area_nodes, ordered_sum};
use crate::catalog::ImmersedPatch;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::Vec3;

/// Tail bounds above this make [`f_functional`] flag its value.
pub const TAIL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FValue {
    pub value: f64,
    /// `exp(-R²/4t0)`, `R` the distance from `x0` to the image of the chart boundary.
    pub tail_bound: f64,
    pub tail_warning: bool,
}

/// Smallest distance from `x0` to the image of the sampling-region boundary,
/// probed at `n` points per edge.
pub fn boundary_distance(patch: &ImmersedPatch, x0: &Vec3, n: usize) -> f64 {
    let (u0, u1) = patch.domain().u_range();
    let (v0, v1) = patch.domain().v_range();
    let n = (n.max(2) / 2) * 2 + 1;
    let mut best = f64::INFINITY;
    for k in 0..n {
        let s = k as f64 / (n - 1) as f64;
        let (u, v) = (u0 + s * (u1 - u0), v0 + s * (v1 - v0));
        for (a, b) in [(u, v0), (u, v1), (u0, v), (u1, v)] {
            best = best.min((patch.embed(a, b) - x0).norm());
        }
    }
    best
}

/// `F_{x0,t0} = (4π t0)^{-1} ∫ exp(-|x - x0|²/4t0) dA` over the sampling region.
pub fn f_functional(patch: &ImmersedPatch, x0: &Vec3, t0: f64, grid: &GridSpec) -> Result<FValue> {
    if !(t0 > 0.0 && t0.is_finite()) {
        return Err(Error::InvalidParameter {
            field: "t0",
            reason: format!("must be positive, got {t0}"),
        });
    }
    if x0.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter {
            field: "x0",
            reason: "must be finite".into(),
        });
    }
    grid.validate()?;
    let nodes = area_nodes(patch, &grid.quadrature_nodes(patch.domain()));
    let terms: Vec<f64> = nodes
        .par_iter()
        .map(|n| n.area * (-(n.position - x0).norm_squared() / (4.0 * t0)).exp())
        .collect();
    let value = ordered_sum(&terms) / (4.0 * PI * t0);
    let r = boundary_distance(patch, x0, 4 * grid.nu.max(grid.nv));
    let tail_bound = (-r * r / (4.0 * t0)).exp();
    Ok(FValue {
        value,
        tail_bound,
        tail_warning: tail_bound > TAIL_TOLERANCE,
    })
}

/// Grid-search maximum of [`f_functional`]; a lower bound for the entropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub value: f64,
    pub x0: [f64; 3],
    pub t0: f64,
    /// Always true: the search is over a finite grid.
    pub lower_bound: bool,
    pub tail_warning: bool,
    pub evaluated: usize,
}

pub fn entropy_estimate(patch: &ImmersedPatch, x0_grid: &[Vec3], t0_grid: &[f64], grid: &GridSpec) -> Result<EntropyEstimate> {
    if x0_grid.is_empty() || t0_grid.is_empty() {
        return Err(Error::InvalidParameter {
            field: "search grid",
            reason: "needs at least one center and one scale".into(),
        });
    }
    let mut best: Option<EntropyEstimate> = None;
    let mut warn = false;
    for x0 in x0_grid {
        for &t0 in t0_grid {
            let f = f_functional(patch, x0, t0, grid)?;
            warn |= f.tail_warning;
            if best.as_ref().is_none_or(|b| f.value > b.value) {
                best = Some(EntropyEstimate {
                    value: f.value,
                    x0: [x0.x, x0.y, x0.z],
                    t0,
                    lower_bound: true,
                    tail_warning: false,
                    evaluated: 0,
                });
            }
        }
    }
    let mut out = best.expect("non-empty search grid");
    out.tail_warning = warn;
    out.evaluated = x0_grid.len() * t0_grid.len();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_grim_reaper, make_vertical_plane, ChartDomain};
    use crate::grid::{Quadrature, Spacing};
    use std::f64::consts::FRAC_PI_2;

    fn plane(half: f64) -> ImmersedPatch {
        make_vertical_plane(0.0, ChartDomain::square(half).unwrap()).unwrap()
    }

    fn gl(n: usize) -> GridSpec {
        GridSpec::new(n, n).unwrap().with_quadrature(Quadrature::GaussLegendre(4))
    }

    #[test]
    fn plane_is_normalized() {
        for t0 in [0.25f64, 1.0, 3.0] {
            let p = plane(10.0 * t0.sqrt());
            let f = f_functional(&p, &Vec3::zeros(), t0, &gl(40)).unwrap();
            assert!((f.value - 1.0).abs() < 1e-6, "t0 = {t0}: {}", f.value);
            assert!(!f.tail_warning);
        }
    }

    #[test]
    fn off_plane_factor() {
        let f = f_functional(&plane(10.0), &Vec3::new(2.0, 0.0, 0.0), 1.0, &gl(40)).unwrap();
        assert!((f.value - (-1.0f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn small_domain_warns() {
        let f = f_functional(&plane(2.0), &Vec3::zeros(), 1.0, &gl(16)).unwrap();
        assert!(f.tail_warning);
        let r = 2.0 - ChartDomain::square(2.0).unwrap().margin;
        assert!((f.tail_bound - (-r * r / 4.0).exp()).abs() < 1e-12);
        assert!(f.value < 0.9);
        assert!(f_functional(&plane(2.0), &Vec3::zeros(), 0.0, &gl(16)).is_err());
    }

    #[test]
    fn horizontal_translation_invariance() {
        let reaper = make_grim_reaper(ChartDomain::with_margin(0.0, PI, -10.0, 10.0, 1e-9).unwrap()).unwrap();
        let grid = gl(40).with_spacing(Spacing::Graded);
        let x0 = Vec3::new(1.2, 0.3, 0.5);
        let off = Vec3::new(3.7, -2.1, 0.0);
        let a = f_functional(&reaper, &x0, 1.0, &grid).unwrap().value;
        let b = f_functional(&reaper.translated(off), &(x0 + off), 1.0, &grid).unwrap().value;
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn entropy_is_a_monotone_max() {
        let p = plane(10.0);
        let g = gl(24);
        let x0s = [Vec3::zeros(), Vec3::new(0.5, 0.0, 0.0)];
        let e1 = entropy_estimate(&p, &x0s[..1], &[1.0], &g).unwrap();
        let e2 = entropy_estimate(&p, &x0s, &[1.0, 2.0], &g).unwrap();
        assert!(e1.lower_bound && e2.value >= e1.value);
        assert!((e2.value - 1.0).abs() < 1e-6);
        assert_eq!(e2.evaluated, 4);
        let reaper = make_grim_reaper(ChartDomain::with_margin(0.0, PI, -10.0, 10.0, 1e-9).unwrap()).unwrap();
        let apex = Vec3::new(FRAC_PI_2, 0.0, 0.0);
        let grid = gl(32).with_spacing(Spacing::Graded);
        let probe = f_functional(&reaper, &apex, 1.0, &grid).unwrap().value;
        let e = entropy_estimate(&reaper, &[apex, Vec3::new(FRAC_PI_2, 0.0, 1.0)], &[1.0], &grid).unwrap();
        assert!(e.value >= probe);
    }
}
