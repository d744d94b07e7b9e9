//! Geodesics of the conformal metric `e^{x3} <,>` on `R^3`.
//!
//! Translators are exactly the minimal surfaces of this metric. Its
//! Christoffel symbols are constant, so the geodesic system integrates in
//! closed form; we also ship a fixed-step RK4 integrator as an oracle.
//! `t` is always conformal arclength.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::Vec3;

/// Tolerance on `e^{p3}|v|² = 1` for closed-form initial data.
pub const UNIT_SPEED_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState {
    pub position: Vec3,
    pub velocity: Vec3,
    pub t: f64,
}

impl GeodesicState {
    /// `e^{γ3} |γ'|²`, conserved along geodesics.
    pub fn conformal_speed(&self) -> f64 {
        conformal_speed(&self.position, &self.velocity)
    }

    /// `|γ1'² + γ2'² − e^{−γ3} + γ3'²|` for a unit-speed geodesic.
    pub fn speed_identity_residual(&self) -> f64 {
        let v = &self.velocity;
        (v.x * v.x + v.y * v.y - (-self.position.z).exp() + v.z * v.z).abs()
    }
}

pub fn conformal_speed(position: &Vec3, velocity: &Vec3) -> f64 {
    position.z.exp() * velocity.norm_squared()
}

/// Rescales a direction to conformal unit speed at `p`.
pub fn unit_velocity(p: &Vec3, direction: &Vec3) -> Result<Vec3> {
    let n = direction.norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::InvalidParameter {
            field: "direction",
            reason: "must be a nonzero finite vector".into(),
        });
    }
    Ok(direction * ((-p.z / 2.0).exp() / n))
}

/// `Γ^k_{ij}` with zero-based indices: `½(δ_{i3}δ_{jk} + δ_{j3}δ_{ik} − δ_{k3}δ_{ij})`
/// for the conformal factor `e^{x3}`.
pub fn christoffel(k: usize, i: usize, j: usize) -> f64 {
    assert!(i < 3 && j < 3 && k < 3, "Christoffel indices must be 0, 1 or 2");
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    0.5 * (d(i, 2) * d(j, k) + d(j, 2) * d(i, k) - d(k, 2) * d(i, j))
}

/// `γ''^k = −Γ^k_{ij} γ'^i γ'^j`.
pub fn geodesic_acceleration(velocity: &Vec3) -> Vec3 {
    let mut a = Vec3::zeros();
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                a[k] -= christoffel(k, i, j) * velocity[i] * velocity[j];
            }
        }
    }
    a
}

/// Closed-form position at conformal time `t ≥ 0` of the geodesic with
/// `γ(0) = p`, `γ'(0) = v` (conformal unit speed).
///
/// With `a = e^{p3}`, `s = |(v1, v2)|`, `w = v3`:
/// `γ3 = ln((t² + 4 w a t + 4a)/4)` and
/// `γi = pi + 2 (vi/s) θ(t)` with `θ = atan2(t s, w t + 2)`, the continuous
/// branch of `arctan(t s/(w t + 2))`. Vertical shots keep `γ1, γ2` fixed.
pub fn geodesic_closed_form(p: &Vec3, v: &Vec3, t: f64) -> Result<Vec3> {
    let speed = conformal_speed(p, v);
    if !((speed - 1.0).abs() <= UNIT_SPEED_TOLERANCE) {
        return Err(Error::NonUnitSpeed { speed });
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter {
            field: "t",
            reason: format!("must be finite and non-negative, got {t}"),
        });
    }
    let a = p.z.exp();
    let s = v.x.hypot(v.y);
    let w = v.z;
    let q = t * t + 4.0 * w * a * t + 4.0 * a;
    if !(q > 0.0) {
        // only a downward vertical shot reaches x3 = −∞, at t = 2|w|a
        return Err(Error::GeodesicDegenerate { t });
    }
    let z = (q / 4.0).ln();
    if s == 0.0 {
        return Ok(Vec3::new(p.x, p.y, z));
    }
    let theta = (t * s).atan2(w * t + 2.0);
    Ok(Vec3::new(p.x + 2.0 * v.x / s * theta, p.y + 2.0 * v.y / s * theta, z))
}

/// Classical RK4 with a fixed step; the last step is shortened so the
/// trajectory ends exactly at `t_end`. Returns every state including `t = 0`.
pub fn geodesic_ode_integrate(p: &Vec3, v: &Vec3, t_end: f64, step: f64) -> Result<Vec<GeodesicState>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidParameter {
            field: "step",
            reason: format!("must be positive, got {step}"),
        });
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::InvalidParameter {
            field: "t_end",
            reason: format!("must be finite and non-negative, got {t_end}"),
        });
    }
    let n = (t_end / step).ceil() as usize;
    let mut out = Vec::with_capacity(n + 1);
    let mut state = GeodesicState {
        position: *p,
        velocity: *v,
        t: 0.0,
    };
    out.push(state);
    for k in 0..n {
        let t0 = k as f64 * step;
        let h = if k + 1 == n { t_end - t0 } else { step };
        let (x, y) = (state.position, state.velocity);
        let (k1x, k1v) = (y, geodesic_acceleration(&y));
        let y2 = y + k1v * (h / 2.0);
        let (k2x, k2v) = (y2, geodesic_acceleration(&y2));
        let y3 = y + k2v * (h / 2.0);
        let (k3x, k3v) = (y3, geodesic_acceleration(&y3));
        let y4 = y + k3v * h;
        let (k4x, k4v) = (y4, geodesic_acceleration(&y4));
        let position = x + (k1x + 2.0 * k2x + 2.0 * k3x + k4x) * (h / 6.0);
        let velocity = y + (k1v + 2.0 * k2v + 2.0 * k3v + k4v) * (h / 6.0);
        if !(position.iter().all(|c| c.is_finite()) && velocity.iter().all(|c| c.is_finite())) {
            return Err(Error::GeodesicDegenerate { t: t0 });
        }
        state = GeodesicState {
            position,
            velocity,
            t: if k + 1 == n { t_end } else { t0 + h },
        };
        out.push(state);
    }
    Ok(out)
}

/// Conformal length `∫ e^{γ3/2} |γ'| dt` of a sampled trajectory (trapezoid rule).
pub fn conformal_length(trajectory: &[GeodesicState]) -> f64 {
    trajectory
        .windows(2)
        .map(|w| {
            let f = |s: &GeodesicState| (s.position.z / 2.0).exp() * s.velocity.norm();
            (w[1].t - w[0].t) * (f(&w[0]) + f(&w[1])) / 2.0
        })
        .sum()
}

/// CSV with columns `t,x,y,z,vx,vy,vz,speed_drift`, where the drift is the
/// conformal speed minus its initial value.
pub fn write_trajectory_csv<W: Write>(mut w: W, trajectory: &[GeodesicState]) -> io::Result<()> {
    writeln!(w, "t,x,y,z,vx,vy,vz,speed_drift")?;
    let s0 = trajectory.first().map(|s| s.conformal_speed()).unwrap_or(0.0);
    for s in trajectory {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            s.t,
            s.position.x,
            s.position.y,
            s.position.z,
            s.velocity.x,
            s.velocity.y,
            s.velocity.z,
            s.conformal_speed() - s0
        )?;
    }
    Ok(())
}
