use thiserror::Error;

use crate::expr::{EvalError, ParseError};
use crate::jets::JetError;

/// Engine-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular point: speed^2 = {speed_sq:e} below regularity threshold")]
    SingularPoint { speed_sq: f64 },
    #[error("point is not on the curve (|W| = {residual:e})")]
    NotOnCurve { residual: f64 },
    #[error("point is not on the surface (|W| = {residual:e})")]
    NotOnSurface { residual: f64 },
    #[error("gradient vanishes at the point")]
    SingularGradient,
    #[error("points are not pairwise distinct")]
    CoincidentPoints,
    #[error("curvature vanishes; the osculating circle degenerates to a line")]
    ZeroCurvature,
    #[error("degenerate parametrization at ({p}, {q})")]
    DegenerateParametrization { p: f64, q: f64 },
    #[error("cutting plane angle too close to the tangent plane")]
    DegenerateAngle,
    #[error("degenerate metric at ({u}, {v}): EG - F^2 = {det:e}")]
    DegenerateMetric { u: f64, v: f64, det: f64 },
    #[error("surfaces are not isometric: max |dE| = {de:e}, |dF| = {df:e}, |dG| = {dg:e}")]
    NotIsometric { de: f64, df: f64, dg: f64 },
    #[error("integration step too large: relative energy drift {drift:e}")]
    StepTooLarge { drift: f64 },
    #[error("no convergence after {iterations} iterations (best residual {best_residual:e})")]
    NoConvergence { iterations: usize, best_residual: f64 },
    #[error("geodesic triangle sides cross; the region is not simple")]
    RegionNotSimple,
    #[error("surface is not a surface of revolution about the z axis: {0}")]
    NotRevolution(String),
}

impl From<JetError> for Error {
    fn from(e: JetError) -> Self {
        Error::Eval(EvalError::Jet(e))
    }
}

impl Error {
    /// Errors the caller can fix by changing the input text or flags, as
    /// opposed to numerical failures at a particular point.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::Eval(EvalError::UnboundVariable(_)) | Error::InvalidInput(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
