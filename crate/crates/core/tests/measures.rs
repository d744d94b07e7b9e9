use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reaper_core::catalog::{make_grim_reaper, make_vertical_plane, ChartDomain, ImmersedPatch};
use reaper_core::fields::{AmbientScalarField, LinearField};
use reaper_core::grid::{Quadrature, Spacing};
use reaper_core::measures::*;
use reaper_core::Vec3;

// F at the reaper apex, t0 = 1; agrees with the arclength oracle below to 1e-11.
const REAPER_APEX_F: f64 = 1.076664247769;

fn reaper(half_v: f64) -> ImmersedPatch {
    make_grim_reaper(ChartDomain::with_margin(0.0, PI, -half_v, half_v, 1e-12).unwrap()).unwrap()
}

fn graded(n: usize) -> GridSpec {
    GridSpec::new(n, n).unwrap().with_spacing(Spacing::Graded)
}

/// The profile in arclength σ is `x1 = 2 atan(e^σ)`, `x3 = ln cosh σ`; the
/// `x2` Gaussian integrates to `sqrt(4π t0)`.
fn reaper_f_oracle(x0: &Vec3, t0: f64) -> f64 {
    let h = 1e-3;
    let mut s = 0.0;
    for k in -80_000..=80_000 {
        let sigma = k as f64 * h;
        let x1 = 2.0 * sigma.exp().atan();
        let x3 = sigma.cosh().ln();
        s += (-((x1 - x0.x).powi(2) + (x3 - x0.z).powi(2)) / (4.0 * t0)).exp();
    }
    s * h / (4.0 * PI * t0).sqrt()
}

#[test]
fn reaper_apex_f_against_arclength_oracle() {
    let apex = Vec3::new(FRAC_PI_2, 0.0, 0.0);
    let oracle = reaper_f_oracle(&apex, 1.0);
    let f = f_functional(&reaper(12.0), &apex, 1.0, &graded(128)).unwrap();
    assert!(!f.tail_warning);
    assert!((f.value - oracle).abs() < 1e-9, "{} vs {oracle}", f.value);
    assert!((f.value - REAPER_APEX_F).abs() < 1e-10);
    assert!(f.value > 1.0 && f.value <= 2.0);
    let off = Vec3::new(1.0, 0.0, 1.0);
    let g = f_functional(&reaper(18.0), &off, 2.0, &graded(160)).unwrap();
    assert!(!g.tail_warning);
    assert!((g.value - reaper_f_oracle(&off, 2.0)).abs() < 1e-9);
}

#[test]
fn f_quadrature_self_convergence() {
    let apex = Vec3::new(FRAC_PI_2, 0.0, 0.0);
    let r = reaper(12.0);
    let coarse = f_functional(&r, &apex, 1.0, &graded(64)).unwrap().value;
    let fine = f_functional(&r, &apex, 1.0, &graded(128)).unwrap().value;
    let tol = 1e-9;
    assert!((fine - coarse).abs() < 4.0 * tol);
}

#[test]
fn plane_anchor_and_off_plane_decay() {
    let p = make_vertical_plane(0.0, ChartDomain::square(10.0).unwrap()).unwrap();
    let grid = GridSpec::new(40, 40).unwrap().with_quadrature(Quadrature::GaussLegendre(4));
    let e = entropy_estimate(
        &p,
        &[Vec3::zeros(), Vec3::new(0.0, 1.0, -1.0), Vec3::new(1.0, 0.0, 0.0)],
        &[0.5, 1.0, 2.0],
        &grid,
    )
    .unwrap();
    assert!((e.value - 1.0).abs() < 1e-6);
    for d in [0.5, 1.0, 2.0] {
        let f = f_functional(&p, &Vec3::new(d, 0.0, 0.0), 1.0, &grid).unwrap();
        assert!((f.value - (-d * d / 4.0).exp()).abs() < 1e-6);
    }
}

#[test]
fn plane_growth() {
    let p = make_vertical_plane(0.0, ChartDomain::square(12.0).unwrap()).unwrap();
    let grid = GridSpec::new(240, 240).unwrap();
    let radii = [2.0, 4.0, 6.0, 8.0, 10.0];
    let ext = extrinsic_volume_ratio(&p, &Vec3::zeros(), &radii, &grid).unwrap();
    assert!((ext.slope - 2.0).abs() < 0.05);
    assert!(ext.ratios().iter().all(|r| (r / PI - 1.0).abs() < 0.02));
    let int = intrinsic_volume_growth(&p, (0.0, 0.0), &radii, None, &grid).unwrap();
    assert!((int.slope - 2.0).abs() < 0.05);
    assert!(ext.volumes_nondecreasing() && int.volumes_nondecreasing());
}

#[test]
fn reaper_growth_is_quadratic() {
    let apex = Vec3::new(FRAC_PI_2, 0.0, 0.0);
    let ext = extrinsic_volume_ratio(&reaper(30.0), &apex, &[6.0, 9.0, 12.0, 18.0, 24.0], &graded(300)).unwrap();
    assert!((1.9..=2.1).contains(&ext.slope), "{ext:?}");
    let radii = [2.0, 4.0, 6.0, 8.0, 10.0];
    let r = reaper(14.0);
    let int = intrinsic_volume_growth(&r, (FRAC_PI_2, 0.0), &radii, None, &graded(200)).unwrap();
    assert!((1.9..=2.1).contains(&int.slope), "{int:?}");
    // intrinsically flat: areas are close to πr²
    for (rad, v) in radii.iter().zip(&int.volumes) {
        assert!((v / (PI * rad * rad) - 1.0).abs() < 0.05);
    }
    // weight x3 >= 0 on the reaper: vol_h <= e^{-inf h} vol
    let h = LinearField::coordinate(2);
    let w = intrinsic_volume_growth(&r, (FRAC_PI_2, 0.0), &radii, Some(&h as &dyn AmbientScalarField), &graded(200)).unwrap();
    assert!(w.slope <= 2.1);
    assert!(w.volumes.iter().zip(&int.volumes).all(|(a, b)| a <= b));
}

#[test]
fn plane_stability_form_is_positive_for_seeded_bumps() {
    let p = make_vertical_plane(0.0, ChartDomain::square(3.0).unwrap()).unwrap();
    let grid = GridSpec::new(48, 48).unwrap().with_quadrature(Quadrature::GaussLegendre(4));
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10 {
        let b = BumpFunction::new(
            [rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)],
            rng.gen_range(0.3..1.4),
            rng.gen_range(0.5..2.0),
        )
        .unwrap();
        assert!(stability_form(&p, &b, &grid).unwrap() > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stability_form_parallelogram_law(
        c1 in prop::array::uniform2(1.0f64..2.1), r1 in 0.3f64..0.9, a1 in -2.0f64..2.0,
        c2 in prop::array::uniform2(1.0f64..2.1), r2 in 0.3f64..0.9, a2 in -2.0f64..2.0,
    ) {
        let d = ChartDomain::new(0.0, PI, -1.5, 1.5).unwrap();
        let reaper = make_grim_reaper(d).unwrap();
        let grid = GridSpec::new(24, 24).unwrap().with_quadrature(Quadrature::GaussLegendre(3));
        let f = BumpFunction::new([c1[0], c1[1] - 1.55], r1, a1).unwrap();
        let g = BumpFunction::new([c2[0], c2[1] - 1.55], r2, a2).unwrap();
        let sum = Combination::new().plus(1.0, &f).plus(1.0, &g);
        let diff = Combination::new().plus(1.0, &f).plus(-1.0, &g);
        let q = |x: &dyn ChartFunction| stability_form(&reaper, x, &grid).unwrap();
        let lhs = q(&sum) + q(&diff);
        let rhs = 2.0 * q(&f) + 2.0 * q(&g);
        prop_assert!((lhs - rhs).abs() < 1e-8 * (1.0 + rhs.abs()));
    }

    #[test]
    fn f_is_invariant_under_joint_horizontal_translation(
        dx in -5.0f64..5.0, dy in -5.0f64..5.0, x0 in prop::array::uniform3(-1.0f64..1.0),
    ) {
        let r = reaper(10.0);
        let grid = graded(32);
        let x0 = Vec3::new(FRAC_PI_2 + x0[0], x0[1], x0[2]);
        let o = Vec3::new(dx, dy, 0.0);
        let a = f_functional(&r, &x0, 1.0, &grid).unwrap().value;
        let b = f_functional(&r.translated(o), &(x0 + o), 1.0, &grid).unwrap().value;
        prop_assert!((a - b).abs() < 1e-10);
    }
}
