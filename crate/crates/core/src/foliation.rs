//! Equidistant surfaces of a translator in the conformal metric, and the
//! explicit family `Σ_t` of surfaces at signed distance `t` from the plane
//! `{x1 = 0}`.
//!
//! For `t > 0`, `Σ_t` is the graph `x3 = ln(t²/4) − 2 ln sin(x1/2)` over
//! `(0, π) × R`; negative `t` mirrors it to `(−π, 0)` via `x1 ↦ −x1`.

use std::f64::consts::PI;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{make_vertical_plane, ChartDomain, ImmersedPatch, PatchSpec, SurfaceKind};
use crate::diffgeo::{sample, SurfaceSample};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::ilmanen::{conformal_length, geodesic_ode_integrate};
use crate::report::CheckReport;
use crate::Vec3;

/// `|⟨e3, ν⟩|` at or above this is treated as a conformally vertical normal.
pub const SINGULAR_TOLERANCE: f64 = 1e-12;

/// Point at signed conformal distance `t` from a translator sample along
/// the geodesic with initial velocity `e^{−p3/2} ν`.
///
/// Uses `H = ⟨e3, ν⟩`, which is the mean curvature on a translator.
pub fn equidistant_point(base: &SurfaceSample, t: f64) -> Result<Vec3> {
    let p = base.position;
    let nu = base.normal;
    let h = nu.z;
    if !(h.abs() < 1.0 - SINGULAR_TOLERANCE) {
        return Err(Error::SingularDirection { nu3: h });
    }
    if t == 0.0 {
        return Ok(p);
    }
    let root = (1.0 - h * h).sqrt();
    let half = (p.z / 2.0).exp();
    let theta = (t * root).atan2(t * h + 2.0 * half);
    let q = t * t + 4.0 * h * half * t + 4.0 * half * half;
    Ok(Vec3::new(
        p.x + 2.0 * nu.x / root * theta,
        p.y + 2.0 * nu.y / root * theta,
        (q / 4.0).ln(),
    ))
}

/// `Σ_t` for `t > 0` as a chart over a `u`-interval inside `(0, π)`.
pub fn plane_family_patch(t: f64, domain: ChartDomain) -> Result<ImmersedPatch> {
    PatchSpec::new(SurfaceKind::PlaneFamily { t }, domain).build()
}

/// Height of `Σ_t` above `x1`, for `x1` on the side of `{x1 = 0}` selected by the sign of `t`.
pub fn plane_family_height(t: f64, x1: f64) -> Result<f64> {
    if !(t != 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter {
            field: "t",
            reason: format!("must be finite and nonzero, got {t}"),
        });
    }
    let a = x1 * t.signum();
    if !(a > 0.0 && a < PI) {
        return Err(Error::OutsideSlab { x1, width: PI });
    }
    Ok((t * t / 4.0).ln() - 2.0 * (a / 2.0).sin().ln())
}

/// Signed distance `t` of the leaf through `(x1, ·, x3)`; zero on `{x1 = 0}`.
pub fn leaf_through(x1: f64, x3: f64) -> f64 {
    2.0 * (x3 / 2.0).exp() * (x1 / 2.0).sin()
}

/// Target region and sampling density for the coverage check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FoliationBox {
    pub x1: [f64; 2],
    pub x2: [f64; 2],
    pub x3: [f64; 2],
    pub density: f64,
}

impl Default for FoliationBox {
    fn default() -> Self {
        Self {
            x1: [-PI + 0.1, PI - 0.1],
            x2: [-1.0, 1.0],
            x3: [0.0, 3.0],
            density: 0.05,
        }
    }
}

impl FoliationBox {
    fn validate(&self) -> Result<()> {
        let ok = |r: [f64; 2]| r[0].is_finite() && r[1].is_finite() && r[0] < r[1];
        if !(ok(self.x1) && ok(self.x2) && ok(self.x3)) {
            return Err(Error::InvalidParameter {
                field: "box",
                reason: "each range must be finite and non-empty".into(),
            });
        }
        if self.x1[0] <= -PI || self.x1[1] >= PI {
            return Err(Error::InvalidParameter {
                field: "box",
                reason: "x1 range must lie inside (-pi, pi)".into(),
            });
        }
        if !(self.density > 0.0 && self.density.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "density",
                reason: format!("must be positive, got {}", self.density),
            });
        }
        Ok(())
    }
}

/// `n` evenly spaced values in `[-t_max, t_max]`; zero is skipped when `n` is odd.
pub fn symmetric_t_grid(n: usize, t_max: f64) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    if n.is_multiple_of(2) {
        (0..n).map(|k| -t_max + 2.0 * t_max * k as f64 / (n - 1).max(1) as f64).collect()
    } else {
        let half = n.div_ceil(2);
        let pos: Vec<f64> = (1..=half).map(|k| t_max * k as f64 / half as f64).collect();
        let mut out: Vec<f64> = pos.iter().rev().map(|t| -t).collect();
        out.extend(pos.iter().take(n - half));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoliationReport {
    /// Violations of strictly increasing height across leaves at a fixed `(x1, x2)`.
    pub disjointness: CheckReport,
    /// Violations of strictly increasing `x3` along the normal geodesic from `Σ_0`.
    pub monotonicity: CheckReport,
    /// Distance from box probes to the nearest sampled leaf point.
    pub coverage: CheckReport,
}

impl FoliationReport {
    pub fn pass(&self) -> bool {
        self.disjointness.pass && self.monotonicity.pass && self.coverage.pass
    }

    pub fn reports(&self) -> [&CheckReport; 3] {
        [&self.disjointness, &self.monotonicity, &self.coverage]
    }
}

fn validate_t_values(t_values: &[f64]) -> Result<Vec<f64>> {
    if t_values.is_empty() {
        return Err(Error::InvalidParameter {
            field: "t_values",
            reason: "empty".into(),
        });
    }
    let mut ts = t_values.to_vec();
    if ts.iter().any(|t| !(t.is_finite() && *t != 0.0)) {
        return Err(Error::InvalidParameter {
            field: "t_values",
            reason: "values must be finite and nonzero".into(),
        });
    }
    ts.sort_by(|a, b| a.total_cmp(b));
    if ts.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter {
            field: "t_values",
            reason: "values must be distinct".into(),
        });
    }
    Ok(ts)
}

/// Leaves of one sign ordered by increasing `|t|`.
fn by_magnitude(ts: &[f64], sign: f64) -> Vec<f64> {
    let mut out: Vec<f64> = ts.iter().copied().filter(|t| t.signum() == sign).collect();
    out.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    out
}

/// Falsification net for the claim that `{Σ_t}` foliates `(−π, π) × R × R`.
///
/// Disjointness compares chart heights of the leaves at every grid node of
/// `(0, π) × [x2 range]` (mirrored for negative `t`); monotonicity shoots
/// from grid bases on `Σ_0`; coverage measures the largest gap between box
/// probes and the sampled leaves in the `(x1, x3)` cross-section, on which
/// the family does not depend on `x2`.
pub fn verify_foliation(t_values: &[f64], grid: &GridSpec, target: &FoliationBox) -> Result<FoliationReport> {
    grid.validate()?;
    target.validate()?;
    let ts = validate_t_values(t_values)?;
    let grid_label = format!("{} x {} leaves", grid.describe(), ts.len());

    let chart = ChartDomain::new(0.0, PI, target.x2[0], target.x2[1])?;
    let patches: Vec<(f64, ImmersedPatch)> = ts
        .iter()
        .map(|&t| plane_family_patch(t.abs(), chart).map(|p| (t, p)))
        .collect::<Result<_>>()?;
    let nodes = grid.nodes(&chart);
    let disjoint: Vec<(f64, Vec<f64>)> = nodes
        .par_iter()
        .flat_map_iter(|&(u, v)| {
            [1.0, -1.0].into_iter().map(move |sign| (u, v, sign))
        })
        .map(|(u, v, sign)| {
            let leaves = by_magnitude(&ts, sign);
            let heights: Vec<f64> = leaves
                .iter()
                .map(|t| patches.iter().find(|(s, _)| s == t).expect("patch per leaf").1.embed(u, v).z)
                .collect();
            let bad = heights.windows(2).filter(|w| !(w[1] > w[0])).count();
            (bad as f64, vec![sign * u, v])
        })
        .collect();
    let disjointness = CheckReport::from_residuals("foliation-disjointness", grid_label.clone(), 0.0, disjoint);

    let base_domain = ChartDomain::new(target.x2[0], target.x2[1], target.x3[0], target.x3[1])?;
    let sigma0 = make_vertical_plane(0.0, base_domain)?;
    let bases = grid.nodes(&base_domain);
    let mono: Vec<(f64, Vec<f64>)> = bases
        .par_iter()
        .map(|&(u, v)| -> Result<(f64, Vec<f64>)> {
            let s = sample(&sigma0, u, v)?;
            let mut bad = 0usize;
            for sign in [1.0, -1.0] {
                let mut prev = s.position.z;
                for t in by_magnitude(&ts, sign) {
                    let x = equidistant_point(&s, t)?;
                    if !(x.z > prev) || x.x.signum() != sign {
                        bad += 1;
                    }
                    prev = x.z;
                }
            }
            Ok((bad as f64, vec![0.0, u, v]))
        })
        .collect::<Result<_>>()?;
    let monotonicity = CheckReport::from_residuals("foliation-monotonicity", grid_label.clone(), 0.0, mono);

    let coverage = coverage_report(&ts, target);
    Ok(FoliationReport {
        disjointness,
        monotonicity,
        coverage,
    })
}

// Leaf points in the (x1, x3) plane, spaced at most `ds` in arclength,
// restricted to a band around the target box.
fn leaf_cross_section(t: f64, x3_lo: f64, x3_hi: f64, ds: f64) -> Vec<[f64; 2]> {
    let mut pts = Vec::new();
    let sign = t.signum();
    let base = (t * t / 4.0).ln();
    let mut a = PI;
    loop {
        let z = base - 2.0 * (a / 2.0).sin().ln();
        if z > x3_hi {
            break;
        }
        if z >= x3_lo {
            pts.push([sign * a, z]);
        }
        // |d(x1, x3)/dx1| = 1/sin(x1/2)
        a -= ds * (a / 2.0).sin().max(1e-12);
        if a <= 0.0 {
            break;
        }
    }
    pts
}

fn coverage_report(ts: &[f64], target: &FoliationBox) -> CheckReport {
    let d = target.density;
    let ds = d / 10.0;
    let (z_lo, z_hi) = (target.x3[0] - d, target.x3[1] + d);
    let points: Vec<[f64; 2]> = ts
        .par_iter()
        .map(|&t| leaf_cross_section(t, z_lo, z_hi, ds))
        .collect::<Vec<_>>()
        .concat();
    let hash = PointHash::new(&points, d, [target.x1[0] - d, z_lo]);
    let step = d / 2.0;
    let n1 = ((target.x1[1] - target.x1[0]) / step).ceil() as usize + 1;
    let n3 = ((target.x3[1] - target.x3[0]) / step).ceil() as usize + 1;
    let probe = |i: usize, k: usize| {
        [
            (target.x1[0] + i as f64 * step).min(target.x1[1]),
            (target.x3[0] + k as f64 * step).min(target.x3[1]),
        ]
    };
    let residuals: Vec<(f64, Vec<f64>)> = (0..n1 * n3)
        .into_par_iter()
        .map(|idx| {
            let p = probe(idx / n3, idx % n3);
            (hash.nearest(p), vec![p[0], target.x2[0], p[1]])
        })
        .collect();
    let label = format!("probe step {step} in (x1, x3), {} leaves, {} samples", ts.len(), points.len());
    CheckReport::from_residuals("foliation-coverage", label, d, residuals)
}

struct PointHash<'a> {
    points: &'a [[f64; 2]],
    origin: [f64; 2],
    cell: f64,
    dims: [usize; 2],
    buckets: Vec<Vec<usize>>,
}

impl<'a> PointHash<'a> {
    fn new(points: &'a [[f64; 2]], cell: f64, origin: [f64; 2]) -> Self {
        let mut hi = origin;
        for p in points {
            hi[0] = hi[0].max(p[0]);
            hi[1] = hi[1].max(p[1]);
        }
        let dims = [
            ((hi[0] - origin[0]) / cell) as usize + 1,
            ((hi[1] - origin[1]) / cell) as usize + 1,
        ];
        let mut buckets = vec![Vec::new(); dims[0] * dims[1]];
        let mut out = Self {
            points,
            origin,
            cell,
            dims,
            buckets: Vec::new(),
        };
        for (n, p) in points.iter().enumerate() {
            let (i, k) = out.cell_of(*p);
            buckets[i * dims[1] + k].push(n);
        }
        out.buckets = buckets;
        out
    }

    fn cell_of(&self, p: [f64; 2]) -> (usize, usize) {
        let f = |x: f64, o: f64, n: usize| (((x - o) / self.cell).floor().max(0.0) as usize).min(n - 1);
        (f(p[0], self.origin[0], self.dims[0]), f(p[1], self.origin[1], self.dims[1]))
    }

    // Ring search; stops once the ring lies farther than the best hit.
    fn nearest(&self, p: [f64; 2]) -> f64 {
        let (ci, ck) = self.cell_of(p);
        let mut best = f64::INFINITY;
        let max_ring = self.dims[0].max(self.dims[1]);
        for ring in 0..=max_ring {
            if (ring as f64 - 1.0) * self.cell > best {
                break;
            }
            let (r, ci, ck) = (ring as isize, ci as isize, ck as isize);
            for i in ci - r..=ci + r {
                for k in ck - r..=ck + r {
                    if (i - ci).abs() != r && (k - ck).abs() != r {
                        continue;
                    }
                    if i < 0 || k < 0 || i >= self.dims[0] as isize || k >= self.dims[1] as isize {
                        continue;
                    }
                    for &n in &self.buckets[i as usize * self.dims[1] + k as usize] {
                        let q = self.points[n];
                        best = best.min((q[0] - p[0]).hypot(q[1] - p[1]));
                    }
                }
            }
        }
        best
    }
}

/// Result of shooting normal geodesics from `Σ_0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquidistanceReport {
    /// `|x3 − height of Σ_t at x1|` at the geodesic endpoint, plus `|Δx2|`.
    pub landing: CheckReport,
    /// `|conformal length − t|`.
    pub length: CheckReport,
}

/// Shoots the geodesic with initial velocity `e^{−p3/2} e1` from `n_probes`
/// seeded random bases `(0, x2, x3)` for conformal time `t` and compares the
/// endpoint with `Σ_t`.
pub fn verify_equidistance(t: f64, n_probes: usize, seed: u64, step: f64, tolerance: f64) -> Result<EquidistanceReport> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter {
            field: "t",
            reason: format!("must be positive, got {t}"),
        });
    }
    if n_probes == 0 {
        return Err(Error::InvalidParameter {
            field: "n_probes",
            reason: "must be at least 1".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<Vec3> = (0..n_probes)
        .map(|_| Vec3::new(0.0, rng.gen_range(-5.0..5.0), rng.gen_range(-2.0..2.0)))
        .collect();
    let shots: Vec<(f64, f64, Vec<f64>)> = bases
        .par_iter()
        .map(|p| -> Result<(f64, f64, Vec<f64>)> {
            let v = Vec3::new((-p.z / 2.0).exp(), 0.0, 0.0);
            let traj = geodesic_ode_integrate(p, &v, t, step)?;
            let end = traj.last().expect("trajectory has endpoints").position;
            let height = plane_family_height(t, end.x)?;
            let landing = (end.z - height).abs().max((end.y - p.y).abs());
            let length = (conformal_length(&traj) - t).abs();
            Ok((landing, length, vec![p.x, p.y, p.z]))
        })
        .collect::<Result<_>>()?;
    let grid = format!("{n_probes} probes, t = {t}, step {step}, seed {seed}");
    Ok(EquidistanceReport {
        landing: CheckReport::from_residuals(
            "equidistance-landing",
            grid.clone(),
            tolerance,
            shots.iter().map(|(r, _, p)| (*r, p.clone())),
        ),
        length: CheckReport::from_residuals(
            "equidistance-length",
            grid,
            tolerance,
            shots.iter().map(|(_, r, p)| (*r, p.clone())),
        ),
    })
}

/// `|H − ½ sin(u/2)|` and `|H − ½⟨e3, ν⟩|` on `Σ_t`.
pub fn check_plane_family_curvature(t: f64, domain: ChartDomain, grid: &GridSpec, tolerance: f64) -> Result<CheckReport> {
    let patch = plane_family_patch(t, domain)?;
    let res: Vec<(f64, Vec<f64>)> = grid
        .nodes(&domain)
        .par_iter()
        .map(|&(u, v)| -> Result<(f64, Vec<f64>)> {
            let s = sample(&patch, u, v)?;
            let h = s.mean_curvature;
            let r = (h - 0.5 * (u / 2.0).sin()).abs().max((h - 0.5 * s.normal.z).abs());
            Ok((r, vec![u, v]))
        })
        .collect::<Result<_>>()?;
    Ok(CheckReport::from_residuals("plane-family-curvature", grid.describe(), tolerance, res))
}

/// Entrywise distance between the first fundamental form of `Σ_t` and `diag(1/sin²(u/2), 1)`.
pub fn check_plane_family_metric(t: f64, domain: ChartDomain, grid: &GridSpec, tolerance: f64) -> Result<CheckReport> {
    let patch = plane_family_patch(t, domain)?;
    let res: Vec<(f64, Vec<f64>)> = grid
        .nodes(&domain)
        .par_iter()
        .map(|&(u, v)| -> Result<(f64, Vec<f64>)> {
            let s = sample(&patch, u, v)?;
            let g11 = 1.0 / (u / 2.0).sin().powi(2);
            let g = s.metric;
            let r = (g[(0, 0)] - g11)
                .abs()
                .max(g[(0, 1)].abs())
                .max(g[(1, 0)].abs())
                .max((g[(1, 1)] - 1.0).abs());
            Ok((r, vec![u, v]))
        })
        .collect::<Result<_>>()?;
    Ok(CheckReport::from_residuals("plane-family-metric", grid.describe(), tolerance, res))
}

/// CSV with columns `t,x1,x2,x3`: each leaf sampled at the grid nodes of
/// `domain` (mirrored to `x1 < 0` for negative `t`).
pub fn write_foliation_csv<W: Write>(mut w: W, t_values: &[f64], domain: &ChartDomain, grid: &GridSpec) -> io::Result<()> {
    writeln!(w, "t,x1,x2,x3")?;
    let nodes = grid.nodes(domain);
    for &t in t_values {
        for &(u, v) in &nodes {
            let x1 = u * t.signum();
            match plane_family_height(t, x1) {
                Ok(z) => writeln!(w, "{t},{x1},{v},{z}")?,
                Err(_) => continue,
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_grim_reaper;
    use crate::ilmanen::geodesic_closed_form;
    use crate::translator::translator_residual;
    use std::f64::consts::FRAC_PI_2;

    fn sigma0() -> ImmersedPatch {
        make_vertical_plane(0.0, ChartDomain::square(10.0).unwrap()).unwrap()
    }

    fn chart() -> ChartDomain {
        ChartDomain::new(0.0, PI, -1.0, 1.0).unwrap()
    }

    #[test]
    fn plane_origin_at_distance_two() {
        let s = sample(&sigma0(), 0.0, 0.0).unwrap();
        let x = equidistant_point(&s, 2.0).unwrap();
        assert!((x - Vec3::new(FRAC_PI_2, 0.0, 2f64.ln())).norm() < 1e-15);
        let patch = plane_family_patch(2.0, chart()).unwrap();
        assert!((patch.embed(FRAC_PI_2, 0.0) - x).norm() < 1e-15);
    }

    #[test]
    fn zero_distance_is_identity() {
        let s = sample(&sigma0(), 1.3, -0.4).unwrap();
        assert_eq!(equidistant_point(&s, 0.0).unwrap(), s.position);
    }

    #[test]
    fn reaper_apex_is_singular() {
        let reaper = make_grim_reaper(chart()).unwrap();
        let s = sample(&reaper, FRAC_PI_2, 0.0).unwrap();
        assert!(matches!(equidistant_point(&s, 1.0), Err(Error::SingularDirection { .. })));
    }

    #[test]
    fn agrees_with_geodesic_closed_form_off_the_apex() {
        let reaper = make_grim_reaper(chart()).unwrap();
        for u in [0.3, 1.0, 2.5] {
            let s = sample(&reaper, u, 0.2).unwrap();
            let v = s.normal * (-s.position.z / 2.0).exp();
            for t in [0.1, 1.0, 7.0] {
                let a = equidistant_point(&s, t).unwrap();
                let b = geodesic_closed_form(&s.position, &v, t).unwrap();
                assert!((a - b).norm() < 1e-12, "u={u} t={t}");
            }
        }
    }

    #[test]
    fn normal_and_curvature_of_leaves() {
        let patch = plane_family_patch(2.0, chart()).unwrap();
        let s = sample(&patch, FRAC_PI_2, 0.0).unwrap();
        let c = (PI / 4.0).cos();
        assert!((s.normal - Vec3::new(c, 0.0, c)).norm() < 1e-14);
        assert!((s.mean_curvature - 2f64.sqrt() / 4.0).abs() < 1e-14);
        // half-speed: not a translator
        assert!((translator_residual(&s) - 2f64.sqrt() / 4.0).abs() < 1e-14);
    }

    #[test]
    fn leaf_checks_on_grid() {
        let grid = GridSpec::new(24, 12).unwrap();
        for t in [0.5, 1.0, 3.0] {
            assert!(check_plane_family_curvature(t, chart(), &grid, 1e-8).unwrap().pass);
            assert!(check_plane_family_metric(t, chart(), &grid, 1e-8).unwrap().pass);
        }
    }

    #[test]
    fn heights_increase_with_t() {
        let hs: Vec<f64> = [1.0, 2.0, 4.0].iter().map(|&t| plane_family_height(t, 1.0).unwrap()).collect();
        assert!(hs[0] < hs[1] && hs[1] < hs[2]);
        assert!((hs[1] - hs[0] - 4f64.ln()).abs() < 1e-14);
        assert!(plane_family_height(1.0, -1.0).is_err());
        assert!(plane_family_height(0.0, 1.0).is_err());
    }

    #[test]
    fn negative_t_mirrors() {
        let p = sigma0();
        let s = sample(&p, 0.7, 0.3).unwrap();
        for t in [0.4, 2.0, 5.5] {
            let a = equidistant_point(&s, t).unwrap();
            let b = equidistant_point(&s, -t).unwrap();
            assert!((a.x + b.x).abs() < 1e-15 && a.y == b.y && (a.z - b.z).abs() < 1e-15);
            assert_eq!(plane_family_height(t, a.x).unwrap(), plane_family_height(-t, -a.x).unwrap());
        }
    }

    #[test]
    fn leaf_index_inverts_height() {
        for (t, x1) in [(0.3, 0.2), (2.0, 2.9), (-4.0, -1.0)] {
            let z = plane_family_height(t, x1).unwrap();
            assert!((leaf_through(x1, z) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn t_grid_shapes() {
        let g = symmetric_t_grid(200, 9.0);
        assert_eq!(g.len(), 200);
        assert!(g.iter().all(|t| *t != 0.0));
        assert_eq!(g[0], -9.0);
        assert_eq!(g[199], 9.0);
        let g = symmetric_t_grid(5, 1.0);
        assert_eq!(g.len(), 5);
        assert!(g.iter().all(|t| *t != 0.0));
    }

    #[test]
    fn small_foliation_passes_but_sparse_leaves_do_not_cover() {
        let grid = GridSpec::new(16, 8).unwrap();
        let target = FoliationBox {
            density: 0.2,
            ..Default::default()
        };
        let rep = verify_foliation(&symmetric_t_grid(60, 9.0), &grid, &target).unwrap();
        assert!(rep.pass(), "{rep:?}");
        let rep = verify_foliation(&[-3.0, 3.0], &grid, &target).unwrap();
        assert!(rep.disjointness.pass && rep.monotonicity.pass);
        assert!(!rep.coverage.pass);
        assert!(verify_foliation(&[1.0, 1.0], &grid, &target).is_err());
        assert!(verify_foliation(&[0.0, 1.0], &grid, &target).is_err());
    }

    #[test]
    fn equidistance_small() {
        let rep = verify_equidistance(2.0, 8, 7, 1e-3, 1e-6).unwrap();
        assert!(rep.landing.pass && rep.length.pass, "{rep:?}");
    }

    #[test]
    fn foliation_csv_layout() {
        let mut buf = Vec::new();
        write_foliation_csv(&mut buf, &[-1.0, 1.0], &chart(), &GridSpec::new(8, 8).unwrap()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,x1,x2,x3\n"));
        assert_eq!(text.lines().count(), 1 + 2 * 64);
    }
}
