use serde::{Deserialize, Serialize};

/// Outcome of one residual check.
///
/// `pass` holds exactly when at least one node was evaluated and
/// `max_residual <= tolerance`. Non-finite residuals are recorded as
/// `f64::MAX` so the report stays serializable and fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub grid: String,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub pass: bool,
    pub worst_point: Vec<f64>,
    pub tolerance: f64,
    pub evaluated: usize,
    #[serde(default)]
    pub skipped: usize,
}

impl CheckReport {
    pub fn from_residuals<I>(name: impl Into<String>, grid: impl Into<String>, tolerance: f64, residuals: I) -> Self
    where
        I: IntoIterator<Item = (f64, Vec<f64>)>,
    {
        let mut max = 0.0f64;
        let mut sum = 0.0;
        let mut n = 0usize;
        let mut worst = Vec::new();
        for (r, point) in residuals {
            let r = if r.is_finite() { r } else { f64::MAX };
            if n == 0 || r > max {
                max = r;
                worst = point;
            }
            sum += r.min(f64::MAX / 1e6);
            n += 1;
        }
        Self {
            name: name.into(),
            grid: grid.into(),
            max_residual: max,
            mean_residual: if n > 0 { sum / n as f64 } else { 0.0 },
            pass: n > 0 && max <= tolerance,
            worst_point: worst,
            tolerance,
            evaluated: n,
            skipped: 0,
        }
    }

    pub fn with_skipped(mut self, skipped: usize) -> Self {
        self.skipped = skipped;
        self
    }

    /// Merges reports of the same check over several inputs.
    pub fn merge(name: impl Into<String>, grid: impl Into<String>, tolerance: f64, parts: &[CheckReport]) -> Self {
        let mut out = Self::from_residuals(
            name,
            grid,
            tolerance,
            parts.iter().map(|p| (p.max_residual, p.worst_point.clone())),
        );
        let n: usize = parts.iter().map(|p| p.evaluated).sum();
        if n > 0 {
            out.mean_residual = parts.iter().map(|p| p.mean_residual * p.evaluated as f64).sum::<f64>() / n as f64;
        }
        out.evaluated = n;
        out.skipped = parts.iter().map(|p| p.skipped).sum();
        out.pass = n > 0 && parts.iter().all(|p| p.pass) && out.max_residual <= tolerance;
        out
    }
}
