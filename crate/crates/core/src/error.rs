use thiserror::Error;

/// Why a polynomial prefix failed to be 2-orthogonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoOrthFailure {
    /// `chi[n][nu]` should vanish for `nu < n - 1` but equals `value`.
    NonzeroChi { nu: usize, value: String },
    /// Regularity `gamma_{n} != 0` fails.
    ZeroGamma,
}

impl std::fmt::Display for TwoOrthFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TwoOrthFailure::NonzeroChi { nu, value } => {
                write!(f, "structure coefficient chi at nu={nu} is {value}, expected 0")
            }
            TwoOrthFailure::ZeroGamma => write!(f, "gamma vanishes (regularity fails)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("form order exceeded: need order {needed}, have {available}")]
    OrderExceeded { needed: usize, available: usize },

    #[error("missing recurrence coefficient {name}_{index}")]
    MissingCoefficient { name: &'static str, index: usize },

    #[error("gamma_{index} is zero")]
    ZeroGamma { index: usize },

    #[error("lambda_{index} vanishes")]
    ZeroLambda { index: usize },

    #[error("not 2-orthogonal at n={index}: {reason}")]
    NotTwoOrthogonal { index: usize, reason: TwoOrthFailure },

    #[error("repeated eigenvalue: lambda_{n} = lambda_{m}")]
    RepeatedEigenvalue { n: usize, m: usize },

    #[error("operator is not an isomorphism: lambda_{n} = 0")]
    NonInvertible { n: usize },

    #[error("{tag} violated at index {index}: lhs {lhs} != rhs {rhs}")]
    IdentityViolated {
        tag: String,
        index: usize,
        lhs: String,
        rhs: String,
    },

    #[error("hypothesis violated: {hypothesis} ({witness})")]
    HypothesisViolated { hypothesis: String, witness: String },

    #[error("closed form mismatch for {entry}: defined {defined}, printed {closed}")]
    ClosedFormMismatch {
        entry: String,
        defined: String,
        closed: String,
    },

    #[error("not a monic polynomial sequence: entry {index} {reason}")]
    InvalidMps { index: usize, reason: &'static str },

    #[error("operation requires an operator in normal form (deg a_nu <= nu)")]
    NotNormalForm,

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
