use std::cmp::Ordering;
use std::collections::BinaryHeap;

use nalgebra::{Matrix2, Vector2};
use rayon::prelude::*;

use crate::catalog::ImmersedPatch;
use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Geodesic distance from a chart point, sampled at the grid's cell centres
/// (`u` index outer).
#[derive(Debug, Clone)]
pub struct DistanceField {
    pub nu: usize,
    pub nv: usize,
    pub nodes: Vec<(f64, f64)>,
    pub values: Vec<f64>,
}

impl DistanceField {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.nv + j]
    }

    /// Smallest distance attained on the outermost ring of nodes.
    pub fn reach(&self) -> f64 {
        let mut r = f64::INFINITY;
        for i in 0..self.nu {
            for j in 0..self.nv {
                if i == 0 || j == 0 || i + 1 == self.nu || j + 1 == self.nv {
                    r = r.min(self.at(i, j));
                }
            }
        }
        r
    }
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    // min-heap on distance, ties by index
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Neighbour offsets in circular order; even entries are axis moves.
const RING: [(isize, isize); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

/// `min over λ ∈ [0, 1]` of `λ ta + (1 - λ) tb + |p + λ q|_G`, with
/// `q = ea - eb` and `p = eb`.
fn triangle_update(g: &Matrix2<f64>, ea: Vector2<f64>, eb: Vector2<f64>, ta: f64, tb: f64) -> f64 {
    let q = ea - eb;
    let p = eb;
    let a = q.dot(&(g * q));
    let b = p.dot(&(g * q));
    let c = p.dot(&(g * p));
    let delta = ta - tb;
    let norm = |l: f64| (a * l * l + 2.0 * b * l + c).max(0.0).sqrt();
    let mut best = (tb + c.sqrt()).min(ta + norm(1.0));
    let d = (a * c - b * b).max(0.0);
    if a > delta * delta {
        let mu = -delta.signum() * delta.abs() * (d / (a - delta * delta)).sqrt();
        let l = (mu - b) / a;
        if (0.0..=1.0).contains(&l) {
            best = best.min(tb + l * delta + norm(l));
        }
    }
    best
}

/// Fast marching with an 8-neighbour stencil on the chart metric pulled back
/// to grid-index coordinates.
pub fn fast_march(patch: &ImmersedPatch, grid: &GridSpec, origin: (f64, f64)) -> Result<DistanceField> {
    grid.validate()?;
    let domain = patch.domain();
    if !domain.contains(origin.0, origin.1) {
        return Err(Error::OutsideDomain {
            u: origin.0,
            v: origin.1,
        });
    }
    let (nu, nv) = (grid.nu, grid.nv);
    let (um, vm) = (grid.u_map(domain), grid.v_map(domain));
    let s = |k: usize, n: usize| -1.0 + (2.0 * k as f64 + 1.0) / n as f64;
    let nodes = grid.nodes(domain);
    let metric = |u: f64, v: f64| {
        let (_, xu, xv) = patch.tangent_jet(u, v);
        Matrix2::new(xu.dot(&xu), xu.dot(&xv), xu.dot(&xv), xv.dot(&xv))
    };
    let metrics: Vec<Matrix2<f64>> = (0..nu * nv)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / nv, idx % nv);
            let (u, du) = um.map(s(i, nu));
            let (v, dv) = vm.map(s(j, nv));
            let jac = Matrix2::new(du * 2.0 / nu as f64, 0.0, 0.0, dv * 2.0 / nv as f64);
            jac.transpose() * metric(u, v) * jac
        })
        .collect();

    let mut values = vec![f64::INFINITY; nu * nv];
    let mut known = vec![false; nu * nv];
    let mut heap = BinaryHeap::new();

    // seed the nodes around the origin with their chart-metric distance
    let g0 = metric(origin.0, origin.1);
    let nearest = |pts: &[(f64, f64)], x: f64| {
        pts.iter()
            .enumerate()
            .min_by(|a, b| (a.1 .0 - x).abs().total_cmp(&(b.1 .0 - x).abs()))
            .map(|(k, _)| k)
            .unwrap_or(0)
    };
    let us: Vec<(f64, f64)> = (0..nu).map(|i| (nodes[i * nv].0, 0.0)).collect();
    let vs: Vec<(f64, f64)> = (0..nv).map(|j| (nodes[j].1, 0.0)).collect();
    let (i0, j0) = (nearest(&us, origin.0), nearest(&vs, origin.1));
    for di in -1isize..=1 {
        for dj in -1isize..=1 {
            let (i, j) = (i0 as isize + di, j0 as isize + dj);
            if i < 0 || j < 0 || i >= nu as isize || j >= nv as isize {
                continue;
            }
            let idx = i as usize * nv + j as usize;
            let d = Vector2::new(nodes[idx].0 - origin.0, nodes[idx].1 - origin.1);
            values[idx] = d.dot(&(g0 * d)).sqrt();
            heap.push(Entry(values[idx], idx));
        }
    }

    while let Some(Entry(t, idx)) = heap.pop() {
        if known[idx] || t > values[idx] {
            continue;
        }
        known[idx] = true;
        let (i, j) = ((idx / nv) as isize, (idx % nv) as isize);
        for &(di, dj) in &RING {
            let (a, b) = (i + di, j + dj);
            if a < 0 || b < 0 || a >= nu as isize || b >= nv as isize {
                continue;
            }
            let n = a as usize * nv + b as usize;
            if known[n] {
                continue;
            }
            let cand = update(&metrics[n], &values, &known, a, b, nu, nv);
            if cand < values[n] {
                values[n] = cand;
                heap.push(Entry(cand, n));
            }
        }
    }
    Ok(DistanceField { nu, nv, nodes, values })
}

fn update(g: &Matrix2<f64>, values: &[f64], known: &[bool], i: isize, j: isize, nu: usize, nv: usize) -> f64 {
    let at = |k: usize| -> Option<(Vector2<f64>, f64)> {
        let (di, dj) = RING[k % 8];
        let (a, b) = (i + di, j + dj);
        if a < 0 || b < 0 || a >= nu as isize || b >= nv as isize {
            return None;
        }
        let n = a as usize * nv + b as usize;
        known[n].then(|| (Vector2::new(di as f64, dj as f64), values[n]))
    };
    let mut best = f64::INFINITY;
    for k in 0..8 {
        let Some((e, t)) = at(k) else { continue };
        best = best.min(t + e.dot(&(g * e)).sqrt());
        if let Some((e2, t2)) = at(k + 1) {
            best = best.min(triangle_update(g, e, e2, t, t2));
        }
    }
    best
}
