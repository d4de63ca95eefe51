use thiserror::Error;

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

/// Domain and argument errors raised by the geometric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point ({x1}, {x2}, {x3}) is not strictly inside the Lorentz cone")]
    OutsideCone { x1: f64, x2: f64, x3: f64 },

    #[error("point ({t1}, {t2}) is not inside the open unit disk")]
    OutsideDisk { t1: f64, t2: f64 },

    #[error("point {x} + {y}i is not in the upper half-plane")]
    OutsideHalfPlane { x: f64, y: f64 },

    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(f64),

    #[error("matrix has trace {0}, expected 0")]
    NotTraceless(f64),

    #[error("Möbius transformation sends the point to infinity")]
    MobiusPole,

    #[error("finite-difference stencil of step {step} leaves the chart at y = {y}")]
    StencilOutsideChart { y: f64, step: f64 },

    #[error("frame (f, f_x, f_y) is singular")]
    SingularFrame,

    #[error("path endpoint {got} does not match the translated start point {expected}")]
    EndpointMismatch { expected: String, got: String },

    #[error("integration path needs at least two vertices")]
    PathTooShort,

    #[error("word is not freely reduced at position {0}")]
    NotReduced(usize),

    #[error("polynomial degree {degree} exceeds the configured cap {cap}")]
    DegreeTooHigh { degree: usize, cap: usize },

    #[error("Weil-Petersson integrand vanishes at the sample point")]
    DegenerateRatio,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
