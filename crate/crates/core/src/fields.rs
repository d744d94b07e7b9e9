//! Ambient scalar fields `R^3 -> R` with analytic gradients.

use crate::catalog::ReaperParams;
use crate::Vec3;

pub trait AmbientScalarField: Send + Sync {
    fn value(&self, p: &Vec3) -> f64;
    fn gradient(&self, p: &Vec3) -> Vec3;
}

impl<F: AmbientScalarField + ?Sized> AmbientScalarField for &F {
    fn value(&self, p: &Vec3) -> f64 {
        (**self).value(p)
    }
    fn gradient(&self, p: &Vec3) -> Vec3 {
        (**self).gradient(p)
    }
}

/// `<coeffs, x> + constant`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearField {
    pub coeffs: Vec3,
    pub constant: f64,
}

impl LinearField {
    pub fn new(coeffs: Vec3, constant: f64) -> Self {
        Self { coeffs, constant }
    }

    /// The coordinate function `x_{axis+1}` (`axis` is zero-based).
    pub fn coordinate(axis: usize) -> Self {
        let mut c = Vec3::zeros();
        c[axis] = 1.0;
        Self::new(c, 0.0)
    }

    pub fn constant(k: f64) -> Self {
        Self::new(Vec3::zeros(), k)
    }

    /// `f = -x3`, the weight whose drift Laplacian governs translators.
    pub fn translator_weight() -> Self {
        Self::new(Vec3::new(0.0, 0.0, -1.0), 0.0)
    }

    /// `g = (2α/λ²) x2 + ((2 − λ²)/λ²) x3`.
    pub fn superharmonic_weight(params: &ReaperParams) -> Self {
        let lam2 = params.lambda * params.lambda;
        Self::new(Vec3::new(0.0, 2.0 * params.alpha / lam2, (2.0 - lam2) / lam2), 0.0)
    }
}

impl AmbientScalarField for LinearField {
    fn value(&self, p: &Vec3) -> f64 {
        self.coeffs.dot(p) + self.constant
    }
    fn gradient(&self, _p: &Vec3) -> Vec3 {
        self.coeffs
    }
}

/// `u = x3/λ² + (α/λ²) x2 + ln sin(x1/λ)`; NaN outside the slab `0 < x1 < λπ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReaperPotential(pub ReaperParams);

impl AmbientScalarField for ReaperPotential {
    fn value(&self, p: &Vec3) -> f64 {
        let ReaperParams { lambda, alpha, .. } = self.0;
        let lam2 = lambda * lambda;
        let s = (p.x / lambda).sin();
        if !(p.x > 0.0 && p.x < lambda * std::f64::consts::PI) || s <= 0.0 {
            return f64::NAN;
        }
        p.z / lam2 + alpha / lam2 * p.y + s.ln()
    }

    fn gradient(&self, p: &Vec3) -> Vec3 {
        let ReaperParams { lambda, alpha, .. } = self.0;
        let lam2 = lambda * lambda;
        let (s, c) = (p.x / lambda).sin_cos();
        Vec3::new(c / (lambda * s), alpha / lam2, 1.0 / lam2)
    }
}

/// `e^F` for a field `F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpField<F>(pub F);

impl<F: AmbientScalarField> AmbientScalarField for ExpField<F> {
    fn value(&self, p: &Vec3) -> f64 {
        self.0.value(p).exp()
    }
    fn gradient(&self, p: &Vec3) -> Vec3 {
        self.0.gradient(p) * self.0.value(p).exp()
    }
}

type ValueFn = dyn Fn(&Vec3) -> f64 + Send + Sync;
type GradFn = dyn Fn(&Vec3) -> Vec3 + Send + Sync;

/// A field given by a pair of closures.
pub struct FnField {
    value: Box<ValueFn>,
    gradient: Box<GradFn>,
}

impl FnField {
    pub fn new(
        value: impl Fn(&Vec3) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&Vec3) -> Vec3 + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Box::new(value),
            gradient: Box::new(gradient),
        }
    }
}

impl AmbientScalarField for FnField {
    fn value(&self, p: &Vec3) -> f64 {
        (self.value)(p)
    }
    fn gradient(&self, p: &Vec3) -> Vec3 {
        (self.gradient)(p)
    }
}
