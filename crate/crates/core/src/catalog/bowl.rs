//! Radial profile of the bowl soliton.
//!
//! The rotationally symmetric translating graph `x3 = z(r)` satisfies
//! `z'' / (1 + z'^2) + z' / r = 1`. Only the slope `p = z'` is integrated
//! (classical fixed-step RK4); heights are recovered by integrating the
//! cubic Hermite interpolant of `p`, so the interpolated profile has
//! `z' = p` exactly and `z''` is the derivative of that interpolant.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BowlProfile {
    step: f64,
    slope: Vec<f64>,
    slope_rate: Vec<f64>,
    height: Vec<f64>,
}

fn slope_rate(r: f64, p: f64) -> f64 {
    (1.0 + p * p) * (1.0 - p / r)
}

// Power series at the axis: z = r^2/4 + r^4/128, p = r/2 + r^3/32.
fn series(r: f64) -> (f64, f64, f64) {
    let r2 = r * r;
    (r2 / 4.0 + r2 * r2 / 128.0, r / 2.0 + r * r2 / 32.0, 0.5 + 3.0 * r2 / 32.0)
}

impl BowlProfile {
    pub fn integrate(radius_max: f64, step: f64) -> Result<Self> {
        if !(radius_max.is_finite() && radius_max > 0.0) {
            return Err(Error::InvalidParameter {
                field: "radius_max",
                reason: format!("must be positive, got {radius_max}"),
            });
        }
        if !(step.is_finite() && step > 0.0 && step < radius_max) {
            return Err(Error::InvalidParameter {
                field: "ode_step",
                reason: format!("must lie in (0, radius_max), got {step}"),
            });
        }
        let n = (radius_max / step).ceil() as usize + 1;
        let mut slope = Vec::with_capacity(n + 1);
        let mut slope_rate_v = Vec::with_capacity(n + 1);
        slope.push(0.0);
        slope_rate_v.push(0.5);
        let (_, p1, m1) = series(step);
        slope.push(p1);
        slope_rate_v.push(m1);

        let mut p = p1;
        for k in 1..n {
            let r = k as f64 * step;
            let h = step;
            let k1 = slope_rate(r, p);
            let k2 = slope_rate(r + h / 2.0, p + h / 2.0 * k1);
            let k3 = slope_rate(r + h / 2.0, p + h / 2.0 * k2);
            let k4 = slope_rate(r + h, p + h * k3);
            p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if !p.is_finite() {
                return Err(Error::Integration { last_radius: r });
            }
            slope.push(p);
            slope_rate_v.push(slope_rate(r + h, p));
        }

        let mut height = Vec::with_capacity(slope.len());
        height.push(0.0);
        height.push(series(step).0);
        for k in 1..slope.len() - 1 {
            let inc = step * ((slope[k] + slope[k + 1]) / 2.0
                + step * (slope_rate_v[k] - slope_rate_v[k + 1]) / 12.0);
            height.push(height[k] + inc);
        }
        Ok(Self {
            step,
            slope,
            slope_rate: slope_rate_v,
            height,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn radius_max(&self) -> f64 {
        (self.slope.len() - 1) as f64 * self.step
    }

    /// Height, slope and slope rate `(z, z', z'')` at radius `r >= 0`.
    pub fn eval(&self, r: f64) -> (f64, f64, f64) {
        let h = self.step;
        if r < h {
            return series(r);
        }
        let last = self.slope.len() - 2;
        let k = ((r / h).floor() as usize).min(last);
        let t = (r - k as f64 * h) / h;
        let (p0, p1) = (self.slope[k], self.slope[k + 1]);
        let (m0, m1) = (h * self.slope_rate[k], h * self.slope_rate[k + 1]);

        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t3 * t;
        let p = (2.0 * t3 - 3.0 * t2 + 1.0) * p0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * p1
            + (t3 - t2) * m1;
        let dp = ((6.0 * t2 - 6.0 * t) * p0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * p1
            + (3.0 * t2 - 2.0 * t) * m1)
            / h;
        let z = self.height[k]
            + h * ((t4 / 2.0 - t3 + t) * p0
                + (t4 / 4.0 - 2.0 * t3 / 3.0 + t2 / 2.0) * m0
                + (-t4 / 2.0 + t3) * p1
                + (t4 / 4.0 - t3 / 3.0) * m1);
        (z, p, dp)
    }

    /// Returns `(z, q, k)` with `q = z'/r` and `k = (z'' - q)/r^2`, both
    /// finite at the axis, so Cartesian second derivatives are
    /// `z_ij = q δ_ij + k x_i x_j`.
    pub(crate) fn cartesian_coefficients(&self, r: f64) -> (f64, f64, f64) {
        if r < self.step {
            let r2 = r * r;
            return (r2 / 4.0 + r2 * r2 / 128.0, 0.5 + r2 / 32.0, 1.0 / 16.0);
        }
        let (z, p, dp) = self.eval(r);
        let q = p / r;
        (z, q, (dp - q) / (r * r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_vanishes_on_axis() {
        let b = BowlProfile::integrate(2.0, 1e-3).unwrap();
        assert_eq!(b.eval(0.0).1, 0.0);
        assert!((b.eval(0.0).2 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn profile_satisfies_radial_translator_equation() {
        let b = BowlProfile::integrate(3.0, 1e-3).unwrap();
        for i in 1..=60 {
            let r = i as f64 * 0.049;
            let (_, p, dp) = b.eval(r);
            let res = dp / (1.0 + p * p) + p / r - 1.0;
            assert!(res.abs() < 1e-8, "r = {r}: residual {res}");
        }
    }

    #[test]
    fn profile_is_strictly_convex() {
        let b = BowlProfile::integrate(3.0, 1e-3).unwrap();
        let dr = 3.0 / 200.0;
        for i in 1..199 {
            let r = i as f64 * dr;
            let d2 = b.eval(r + dr).0 - 2.0 * b.eval(r).0 + b.eval(r - dr).0;
            assert!(d2 > 0.0, "second difference {d2} at r = {r}");
        }
    }

    #[test]
    fn height_is_continuous_across_nodes() {
        let b = BowlProfile::integrate(1.0, 1e-2).unwrap();
        for k in 1..90 {
            let r = k as f64 * 1e-2;
            let below = b.eval(r - 1e-13).0;
            let above = b.eval(r).0;
            assert!((below - above).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BowlProfile::integrate(-1.0, 1e-3).is_err());
        assert!(BowlProfile::integrate(1.0, 0.0).is_err());
        assert!(BowlProfile::integrate(1.0, 2.0).is_err());
    }
}
