use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid chart domain: {0}")]
    InvalidDomain(String),

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("point ({u}, {v}) lies outside the sampling region of the chart")]
    OutsideDomain { u: f64, v: f64 },

    #[error("x1 = {x1} is outside the open slab (0, {width})")]
    OutsideSlab { x1: f64, width: f64 },

    #[error("degenerate immersion at ({u}, {v}): det g = {det}")]
    Degenerate { u: f64, v: f64, det: f64 },

    #[error("field is not finite at ({u}, {v})")]
    FieldDomain { u: f64, v: f64 },

    #[error("initial velocity is not conformal unit speed: e^x3 |v|^2 = {speed}")]
    NonUnitSpeed { speed: f64 },

    #[error("geodesic leaves the metric's domain at t = {t}")]
    GeodesicDegenerate { t: f64 },

    #[error("normal is conformally vertical (|<e3, nu>| = {nu3}); equidistant map is singular")]
    SingularDirection { nu3: f64 },

    #[error("profile integration failed beyond radius {last_radius}")]
    Integration { last_radius: f64 },

    #[error("radius {radius} exceeds the chart's reach {reach}")]
    Reach { radius: f64, reach: f64 },

    #[error("volume-growth fit needs at least 3 strictly increasing positive radii, got {0}")]
    DegenerateFit(usize),

    #[error("test function does not vanish near the chart boundary (|phi| = {value} at ({u}, {v}))")]
    TestFunctionSupport { u: f64, v: f64, value: f64 },
}
