//! The translator equation and the universal superharmonic function.
//!
//! For `λ ≥ 1` and `α ∈ R` let
//! `u = x3/λ² + (α/λ²) x2 + ln sin(x1/λ)` on the slab `0 < x1 < λπ` and
//! `g = (2α/λ²) x2 + ((2 − λ²)/λ²) x3`. On every translator
//!
//! `Δ_g e^u = (e^u/λ⁴) [(λ² − 1 − α²)<e1,ν>² − (α<e3,ν> − <e2,ν>)²]`,
//!
//! which is non-positive whenever `α² ≥ λ² − 1`. The left side is computed
//! here only through the generic drift-Laplacian machinery of
//! [`crate::diffgeo`], so agreement with the closed form exercises the whole
//! derivation chain.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{ImmersedPatch, ReaperParams};
use crate::diffgeo::{default_laplacian_step, sample, weighted_laplacian, SurfaceSample};
use crate::error::{Error, Result};
use crate::fields::{AmbientScalarField, ExpField, LinearField, ReaperPotential};
use crate::grid::GridSpec;
use crate::Vec3;

/// `rhs ≤ SIGN_TOLERANCE` counts as non-positive.
pub const SIGN_TOLERANCE: f64 = 1e-10;

/// `|H − <e3, ν>|`.
pub fn translator_residual(sample: &SurfaceSample) -> f64 {
    (sample.mean_curvature - sample.normal.z).abs()
}

pub fn u_value(params: &ReaperParams, point: &Vec3) -> Result<f64> {
    let width = params.slab_width();
    let val = ReaperPotential(*params).value(point);
    if val.is_finite() {
        Ok(val)
    } else {
        Err(Error::OutsideSlab { x1: point.x, width })
    }
}

/// `(λ² − 1 − α²) ν1² − (α ν3 − ν2)²` for a unit normal `ν`.
pub fn superharmonic_bracket(params: &ReaperParams, normal: &Vec3) -> f64 {
    let ReaperParams { lambda, alpha, .. } = *params;
    let coeff = lambda * lambda - 1.0 - alpha * alpha;
    let tilt = alpha * normal.z - normal.y;
    coeff * normal.x * normal.x - tilt * tilt
}

/// Closed form of `Δ_g e^u` at a translator sample.
pub fn superharmonic_rhs(params: &ReaperParams, sample: &SurfaceSample) -> Result<f64> {
    let u = u_value(params, &sample.position)?;
    Ok(u.exp() / params.lambda.powi(4) * superharmonic_bracket(params, &sample.normal))
}

/// `Δ_g e^u` by finite differences, with the default Laplacian step.
pub fn superharmonic_lhs(params: &ReaperParams, patch: &ImmersedPatch, u: f64, v: f64) -> Result<f64> {
    superharmonic_lhs_with_step(params, patch, u, v, default_laplacian_step(patch.domain()))
}

pub fn superharmonic_lhs_with_step(
    params: &ReaperParams,
    patch: &ImmersedPatch,
    u: f64,
    v: f64,
    h_fd: f64,
) -> Result<f64> {
    let s = sample(patch, u, v)?;
    u_value(params, &s.position)?;
    let field = ExpField(ReaperPotential(*params));
    let weight = LinearField::superharmonic_weight(params);
    weighted_laplacian(patch, &field, &weight, u, v, h_fd)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperharmonicityRecord {
    pub u: f64,
    pub v: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub sign_ok: bool,
}

impl SuperharmonicityRecord {
    pub fn new(u: f64, v: f64, lhs: f64, rhs: f64) -> Self {
        Self {
            u,
            v,
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
            sign_ok: rhs <= SIGN_TOLERANCE,
        }
    }
}

/// JSON-facing summary of one suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub surface: String,
    pub lambda: f64,
    pub alpha: f64,
    pub grid: String,
    pub max_residual: f64,
    pub sign_ok_fraction: f64,
    pub worst_point: [f64; 2],
    pub evaluated: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperharmonicitySuite {
    pub records: Vec<SuperharmonicityRecord>,
    pub skipped: usize,
    pub summary: SuiteSummary,
}

/// Evaluates both sides at every grid node. Nodes where `u` is undefined
/// (outside the slab) are skipped and counted.
pub fn run_superharmonicity_suite(params: &ReaperParams, patch: &ImmersedPatch, grid: &GridSpec) -> SuperharmonicitySuite {
    let h = default_laplacian_step(patch.domain());
    let results: Vec<Option<SuperharmonicityRecord>> = grid
        .nodes(patch.domain())
        .into_par_iter()
        .map(|(u, v)| {
            let s = sample(patch, u, v).ok()?;
            let rhs = superharmonic_rhs(params, &s).ok()?;
            let lhs = superharmonic_lhs_with_step(params, patch, u, v, h).ok()?;
            Some(SuperharmonicityRecord::new(u, v, lhs, rhs))
        })
        .collect();
    let skipped = results.iter().filter(|r| r.is_none()).count();
    let records: Vec<_> = results.into_iter().flatten().collect();

    let mut worst = [f64::NAN; 2];
    let mut max_residual = 0.0;
    for r in &records {
        if r.residual > max_residual || worst[0].is_nan() {
            max_residual = r.residual;
            worst = [r.u, r.v];
        }
    }
    let ok = records.iter().filter(|r| r.sign_ok).count();
    let sign_ok_fraction = if records.is_empty() { 0.0 } else { ok as f64 / records.len() as f64 };
    let summary = SuiteSummary {
        surface: patch.kind().label().to_string(),
        lambda: params.lambda,
        alpha: params.alpha,
        grid: grid.describe(),
        max_residual,
        sign_ok_fraction,
        worst_point: if records.is_empty() { [0.0; 2] } else { worst },
        evaluated: records.len(),
        skipped,
    };
    SuperharmonicitySuite {
        records,
        skipped,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_grim_reaper, make_parabolic_cylinder, make_vertical_plane, ChartDomain};
    use crate::diffgeo::sample;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn reaper() -> ImmersedPatch {
        make_grim_reaper(ChartDomain::new(0.0, PI, -1.0, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn grim_reaper_is_a_translator() {
        let p = reaper();
        for i in 1..40 {
            let s = sample(&p, PI * i as f64 / 40.0, 0.3).unwrap();
            assert!(translator_residual(&s) < 1e-8);
        }
    }

    #[test]
    fn parabolic_cylinder_is_not_a_translator() {
        // x3 = x1²: H = 2/(1+4)^{3/2}, <e3,ν> = 1/√5 at x1 = 1.
        let p = make_parabolic_cylinder(1.0, ChartDomain::square(2.0).unwrap()).unwrap();
        let s = sample(&p, 1.0, 0.0).unwrap();
        let expected = (1.0 / 5f64.sqrt() - 2.0 / 5f64.powf(1.5)).abs();
        assert!((translator_residual(&s) - expected).abs() < 1e-14);
        assert!(translator_residual(&s) > 0.1);
    }

    #[test]
    fn u_values() {
        let p10 = ReaperParams::new(1.0, 0.0, 0.0).unwrap();
        let p11 = ReaperParams::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(u_value(&p10, &Vec3::new(FRAC_PI_2, 5.0, 0.0)).unwrap(), 0.0);
        assert_eq!(u_value(&p11, &Vec3::new(FRAC_PI_2, 0.0, 0.0)).unwrap(), 0.0);
        let v = u_value(&p10, &Vec3::new(PI / 6.0, 0.0, 1.0)).unwrap();
        assert!((v - (1.0 + 0.5f64.ln())).abs() < 1e-15);
        assert!(matches!(u_value(&p10, &Vec3::new(-0.1, 0.0, 0.0)), Err(Error::OutsideSlab { .. })));
        assert!(u_value(&p10, &Vec3::new(3.5, 0.0, 0.0)).is_err());
    }

    #[test]
    fn rhs_on_grim_reaper_vanishes() {
        let p = reaper();
        let params = ReaperParams::new(1.0, 0.0, 0.0).unwrap();
        for i in 1..20 {
            let s = sample(&p, PI * i as f64 / 20.0, 0.0).unwrap();
            assert_eq!(superharmonic_rhs(&params, &s).unwrap(), 0.0);
        }
    }

    #[test]
    fn plane_rhs_and_lhs() {
        let plane = make_vertical_plane(FRAC_PI_2, ChartDomain::square(1.0).unwrap()).unwrap();
        let params = ReaperParams::new(1.0, 1.0, 0.0).unwrap();
        let s = sample(&plane, 0.0, 0.0).unwrap();
        assert!((superharmonic_rhs(&params, &s).unwrap() + 1.0).abs() < 1e-15);
        assert!((superharmonic_lhs(&params, &plane, 0.0, 0.0).unwrap() + 1.0).abs() < 1e-5);

        let plane1 = make_vertical_plane(1.0, ChartDomain::square(1.0).unwrap()).unwrap();
        let params = ReaperParams::new(SQRT_2, 1.0, 0.0).unwrap();
        let s = sample(&plane1, 0.0, 0.0).unwrap();
        let rhs = superharmonic_rhs(&params, &s).unwrap();
        let lhs = superharmonic_lhs(&params, &plane1, 0.0, 0.0).unwrap();
        assert!((lhs - rhs).abs() < 1e-5, "lhs {lhs} rhs {rhs}");
    }

    #[test]
    fn reaper_lhs_vanishes() {
        let p = reaper();
        let params = ReaperParams::new(1.0, 0.0, 0.0).unwrap();
        for u in [0.2, 0.9, FRAC_PI_2, 2.8] {
            assert!(superharmonic_lhs(&params, &p, u, 0.4).unwrap().abs() < 1e-5);
        }
    }

    #[test]
    fn suite_on_plane_violating_hypothesis() {
        let plane = make_vertical_plane(0.7, ChartDomain::square(1.0).unwrap()).unwrap();
        let params = ReaperParams::new(SQRT_2, 0.0, 0.0).unwrap();
        let suite = run_superharmonicity_suite(&params, &plane, &GridSpec::new(12, 12).unwrap());
        assert_eq!(suite.summary.sign_ok_fraction, 0.0);
        assert!(suite.records.iter().all(|r| r.rhs > 0.0));
        assert!(suite.summary.max_residual < 1e-5);
    }

    #[test]
    fn suite_skips_nodes_outside_slab() {
        let plane = make_vertical_plane(-0.5, ChartDomain::square(1.0).unwrap()).unwrap();
        let params = ReaperParams::new(1.0, 0.0, 0.0).unwrap();
        let suite = run_superharmonicity_suite(&params, &plane, &GridSpec::new(8, 8).unwrap());
        assert_eq!(suite.skipped, 64);
        assert!(suite.records.is_empty());
    }

    fn unit(theta: f64, phi: f64) -> Vec3 {
        Vec3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
    }

    proptest! {
        #[test]
        fn sign_law(lambda in 1.0f64..1.5, excess in 0.0f64..3.0, neg in any::<bool>(), theta in 0.0..PI, phi in 0.0..2.0*PI) {
            let a = (lambda * lambda - 1.0 + excess).sqrt();
            let params = ReaperParams::new(lambda, if neg { -a } else { a }, 0.0).unwrap();
            prop_assert!(superharmonic_bracket(&params, &unit(theta, phi)) <= 1e-15);
        }

        #[test]
        fn vanishing_bracket_forces_both_terms(lambda in 1.0f64..1.5, excess in 0.05f64..3.0, theta in 0.0..PI, phi in 0.0..2.0*PI) {
            let alpha = (lambda * lambda - 1.0 + excess).sqrt();
            let params = ReaperParams::new(lambda, alpha, 0.0).unwrap();
            let n = unit(theta, phi);
            let b = superharmonic_bracket(&params, &n);
            // each term is bounded by |bracket| / (its coefficient)
            prop_assert!(n.x * n.x <= -b / excess + 1e-15);
            prop_assert!((alpha * n.z - n.y).powi(2) <= -b + 1e-15);
        }
    }

    #[test]
    fn vanishing_locus_normals() {
        let params = ReaperParams::new(1.2, 1.5, 0.0).unwrap();
        let n = Vec3::new(0.0, params.alpha, 1.0).normalize();
        let b = superharmonic_bracket(&params, &n);
        assert!(b.abs() < 1e-15);
        assert!(n.x.abs() < 1e-10 && (params.alpha * n.z - n.y).abs() < 1e-10);
    }
}
