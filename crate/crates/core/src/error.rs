use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different variable spaces")]
    MixedSpaces,
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("term with exponent -1 in `{0}` has no polynomial antiderivative")]
    NonIntegrable(String),
    #[error("substitution requires inverting a non-monomial")]
    NonInvertibleSubstitution,
    #[error("`{0}` is not invertible in this ring")]
    NotInvertible(String),
    #[error("expected a univariate polynomial in an affine variable")]
    NotUnivariate,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("negative exponent on affine variable `{0}`")]
    NegativeExponentOnAffineVar(String),
    #[error("polynomial `{0}` has a repeated root")]
    NotSquarefree(String),
    #[error("invalid ring parameter: {0}")]
    InvalidParameter(String),
    #[error("element is not in the image of the localization map")]
    NotInImage,
    #[error("denominator has a root outside the declared poles")]
    UndeclaredPole,
    #[error("vector field is not divergence free")]
    NotDivergenceFree,
    #[error("need at least two variables")]
    NeedTwoVariables,
    #[error("variable `{0}` has the wrong kind for this operation")]
    WrongVariableKind(String),
    #[error("wrong degree: {0}")]
    WrongDegree(String),
    #[error("element is not in E_omega")]
    NotInEOmega,
    #[error("element has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("reduction chain exceeded its step budget of {0}")]
    IncompleteReduction(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
