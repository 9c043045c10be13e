use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator vanishes: {0}")]
    DenominatorVanishes(String),
    #[error("twisted term but the presentation has no twist 1-form")]
    TwistWithoutLambda,
    #[error("form is not of pure bidegree")]
    MixedBidegree,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unspecialized parameters remain: {0}")]
    ParametricInput(String),
    #[error("requested locus makes the logged pivot vanish: {0}")]
    UnresolvedCaseSplit(String),
    #[error("form is not real")]
    NotReal,
    #[error("form is not of type (1,1)")]
    NotType11,
    #[error("metric is singular")]
    SingularMetric,
    #[error("form is not closed")]
    NotClosed,
    #[error("coframe substitution is not invertible")]
    NotInvertible,
    #[error("substitution does not define an integrable structure: {0}")]
    NotIntegrable(String),
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
