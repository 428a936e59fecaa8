use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tangent vectors live at different base points (distance {0:.3e})")]
    BaseMismatch(f64),
    #[error("vector is not tangent: {0}")]
    NotTangent(String),
    #[error("matrix is not in SL2R: det = {0}")]
    InvalidGroupElement(f64),
    #[error("point is not on the hyperquadric: <x,x> = {0}")]
    NotOnHyperquadric(f64),
    #[error("stencil leaves the domain at ({0}, {1})")]
    OutOfDomain(f64, f64),
    #[error("induced metric is degenerate (|det gram| = {0:.3e})")]
    DegenerateInducedMetric(f64),
    #[error("operator is not self-adjoint (asymmetry {0:.3e})")]
    NotSelfAdjoint(f64),
    #[error("distribution TΣ ⊕ PTΣ is degenerate here: {0}")]
    DegenerateDistribution(String),
    #[error("inconsistent angle: cos²+sin² = {0}")]
    InconsistentAngle(f64),
    #[error("no real solution: {0}")]
    NoRealSolution(String),
    #[error("inadmissible parameters: {0}")]
    InadmissibleParams(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
