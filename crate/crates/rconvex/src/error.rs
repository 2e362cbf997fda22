use std::fmt;

/// Crate-wide error type.
///
/// Every variant belongs to one of three classes (see [`Error::class`]):
/// invalid parameter values, violated mathematical preconditions, and
/// numerical failures. The CLI maps these to distinct exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar or structural parameter is outside its allowed range.
    BadParameter(String),
    /// A set specification is malformed (empty, degenerate, inconsistent).
    MalformedSet(String),
    /// Triangle vertices coincide; no circumradius is defined.
    CoincidentVertices,
    /// The grid does not leave the required margin around the set.
    InsufficientMargin { required: f64, actual: f64 },
    /// An operation that needs a connected domain saw several components.
    DisconnectedDomain { components: usize },
    /// A query point lies outside the operation's domain.
    OutsideDomain(String),
    /// A query point lies on the set where the quantity is undefined.
    OnTheSet,
    /// The set is not r-convex at the stated radius (grid resolution).
    NotRConvex { r: f64, excess: f64 },
    /// A closed curve intersects itself.
    SelfIntersecting { seg_a: usize, seg_b: usize },
    /// A matrix does not satisfy its declared structure tag.
    TagViolation { tag: &'static str, deviation: f64, tolerance: f64 },
    /// A linear system lost rank beyond the truncation threshold.
    RankDeficient { condition: f64 },
    /// An eigenvalue or Schur iteration failed to converge.
    EigenFailed(String),
    /// A Green estimate went negative beyond its boundary residual.
    NegativeGreen { value: f64, residual: f64 },
    /// A quadrature or extrapolation could not produce a usable value.
    NumericalFailure(String),
}

/// Coarse classification used for CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Exit code 2: bad configuration or parameter values.
    InvalidParameter,
    /// Exit code 3: violated precondition on otherwise valid inputs.
    Precondition,
    /// Exit code 4: the numerics failed.
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            BadParameter(_) => ErrorClass::InvalidParameter,
            MalformedSet(_) | CoincidentVertices | InsufficientMargin { .. }
            | DisconnectedDomain { .. } | OutsideDomain(_) | OnTheSet
            | NotRConvex { .. } | SelfIntersecting { .. } | TagViolation { .. } => {
                ErrorClass::Precondition
            }
            RankDeficient { .. } | EigenFailed(_) | NegativeGreen { .. }
            | NumericalFailure(_) => ErrorClass::Numerical,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            BadParameter(msg) => write!(f, "bad parameter: {msg}"),
            MalformedSet(msg) => write!(f, "malformed set: {msg}"),
            CoincidentVertices => write!(f, "triangle has coincident vertices"),
            InsufficientMargin { required, actual } => {
                write!(f, "grid margin {actual} below required {required}")
            }
            DisconnectedDomain { components } => {
                write!(f, "domain has {components} components, expected 1")
            }
            OutsideDomain(msg) => write!(f, "point outside domain: {msg}"),
            OnTheSet => write!(f, "query point lies on the set"),
            NotRConvex { r, excess } => {
                write!(f, "set is not {r}-convex at grid resolution (excess {excess})")
            }
            SelfIntersecting { seg_a, seg_b } => {
                write!(f, "curve self-intersects (segments {seg_a} and {seg_b})")
            }
            TagViolation { tag, deviation, tolerance } => {
                write!(f, "matrix violates {tag} tag: deviation {deviation:.3e} > {tolerance:.3e}")
            }
            RankDeficient { condition } => {
                write!(f, "rank-deficient system (condition {condition:.3e})")
            }
            EigenFailed(msg) => write!(f, "eigensolver failed: {msg}"),
            NegativeGreen { value, residual } => {
                write!(f, "Green value {value:.3e} below -residual {residual:.3e}")
            }
            NumericalFailure(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
