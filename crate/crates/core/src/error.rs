use thiserror::Error;

/// Every failure the library can report. Mismatches found by verification
/// routines are reported as values, not as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar `{0}`")]
    MalformedScalar(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed polynomial `{text}`: {reason}")]
    MalformedPoly { text: String, reason: String },
    #[error("parameters must be numeric: {0}")]
    SymbolicParameters(String),
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("generator `{0}` does not belong to the curve's parameter set")]
    ForeignGenerator(String),

    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("pencil is not self-adjoint")]
    NotSelfAdjoint,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("transformation matrix is singular")]
    SingularTransform,
    #[error("leading coefficient matrix A_x is singular")]
    SingularAx,
    #[error("A_x^-1 A_z is not nilpotent")]
    NotNilpotent,
    #[error("evaluation point is not real")]
    NonRealPoint,
    #[error("entry still depends on parameters: {0}")]
    UnboundParameter(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("point is not on the curve: {0}")]
    PointNotOnCurve(String),
    #[error("point is not on the self-adjoint locus -s^2 = f(t): {0}")]
    PointNotOnSelfAdjointLocus(String),
    #[error("t = {0} is not a root of t(t-1)(t-lambda)")]
    NotARoot(String),
    #[error("parameters must be real: {0}")]
    NotReal(String),

    #[error("triangle block P1 is singular")]
    SingularP1,
    #[error("coefficients violate the curve constraints: {0}")]
    ConstraintsViolated(String),
    #[error("extracted parameters violate the curve relation: {0}")]
    RelationViolated(String),
    #[error("pencil is not in canonical-pair form (A_x = J_I, A_z = J_N)")]
    NotCanonicalPair,
    #[error("pfaffian does not define the curve: {0}")]
    NotOnCurve(String),
    #[error("reduction needs a square root outside Q(i): {0}")]
    FieldExtensionRequired(String),

    #[error("invalid pencil document: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable code used in the CLI error document.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedScalar(_) => "MalformedScalar",
            Error::ZeroDenominator(_) => "ZeroDenominator",
            Error::MalformedPoly { .. } => "MalformedPoly",
            Error::SymbolicParameters(_) => "SymbolicParameters",
            Error::SingularCurve(_) => "SingularCurve",
            Error::ForeignGenerator(_) => "ForeignGenerator",
            Error::NotSkew => "NotSkew",
            Error::NotSelfAdjoint => "NotSelfAdjoint",
            Error::NotHermitian => "NotHermitian",
            Error::SingularTransform => "SingularTransform",
            Error::SingularAx => "SingularAx",
            Error::NotNilpotent => "NotNilpotent",
            Error::NonRealPoint => "NonRealPoint",
            Error::UnboundParameter(_) => "UnboundParameter",
            Error::Dimension(_) => "Dimension",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::PointNotOnCurve(_) => "PointNotOnCurve",
            Error::PointNotOnSelfAdjointLocus(_) => "PointNotOnSelfAdjointLocus",
            Error::NotARoot(_) => "NotARoot",
            Error::NotReal(_) => "NotReal",
            Error::SingularP1 => "SingularP1",
            Error::ConstraintsViolated(_) => "ConstraintsViolated",
            Error::RelationViolated(_) => "RelationViolated",
            Error::NotCanonicalPair => "NotCanonicalPair",
            Error::NotOnCurve(_) => "NotOnCurve",
            Error::FieldExtensionRequired(_) => "FieldExtensionRequired",
            Error::Json(_) => "InvalidDocument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
