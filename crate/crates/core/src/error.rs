use thiserror::Error;

use crate::text::ParseError;

/// Why a map failed the automorphism decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotAutomorphismReason {
    SingularLinearPart,
    NonConstantJacobian(String),
    InverseCheckFailed,
}

impl std::fmt::Display for NotAutomorphismReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotAutomorphismReason::SingularLinearPart => write!(f, "singular linear part"),
            NotAutomorphismReason::NonConstantJacobian(det) => {
                write!(f, "non-constant Jacobian determinant {det}")
            }
            NotAutomorphismReason::InverseCheckFailed => {
                write!(f, "truncated inverse does not compose to the identity")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable-count mismatch: expected {expected}, found {found}")]
    NvarsMismatch { expected: usize, found: usize },
    #[error("no formal inverse: singular linear part")]
    NoFormalInverse,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(NotAutomorphismReason),
    #[error("derivation not certified locally nilpotent within {max_power} powers")]
    NotNilpotent { max_power: u32 },
    #[error("zero derivation")]
    ZeroDerivation,
    #[error("derivation is not normalized by the diagonal torus")]
    NotNormalized,
    #[error("zero entry in diagonal element")]
    ZeroDiagonalEntry,
    #[error("negative exponent in {0}")]
    NegativeExponent(&'static str),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("elementary generator on axis {axis} depends on its own variable")]
    ElementaryDependsOnAxis { axis: usize },
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_nvars(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::NvarsMismatch { expected, found })
    }
}
