use thiserror::Error;

use crate::report::CheckReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("space mismatch in {context}: expected {expected}, found {found}")]
    SpaceMismatch {
        context: String,
        expected: String,
        found: String,
    },

    #[error("malformed structure: {0}")]
    Shape(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("antipode is not bijective (rank {rank} < {dim})")]
    SNotBijective { rank: usize, dim: usize },

    #[error("not a twisting: {}", .0.failure_summary())]
    NotATwisting(Box<CheckReport>),

    #[error("not a cocycle: {}", .0.failure_summary())]
    NotACocycle(Box<CheckReport>),

    #[error("span of c.h - eps(h)c is not a coideal: {0}")]
    CoidealFailure(String),

    #[error("witness invalid: {}", .0.failure_summary())]
    WitnessInvalid(Box<CheckReport>),

    #[error("inverse missing for {0}")]
    InverseMissing(String),

    #[error("not Galois: rank of beta is {rank}, dim C⊗H = {source_dim}, dim cotensor = {cotensor_dim}")]
    NotGalois {
        rank: usize,
        source_dim: usize,
        cotensor_dim: usize,
        kernel_vector: Option<Vec<String>>,
    },

    #[error("map is not left B-colinear, right H-linear coalgebra map: {}", .0.failure_summary())]
    PsiNotColinear(Box<CheckReport>),

    #[error("element lies outside the cotensor subspace")]
    OutsideCotensor,

    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("characteristic 2 is not allowed for {0}")]
    CharacteristicTwo(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn mismatch(context: impl Into<String>, expected: impl ToString, found: impl ToString) -> Self {
        Error::SpaceMismatch {
            context: context.into(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    /// The failing report carried by verification errors, if any.
    pub fn report(&self) -> Option<&CheckReport> {
        match self {
            Error::NotATwisting(r)
            | Error::NotACocycle(r)
            | Error::WitnessInvalid(r)
            | Error::PsiNotColinear(r) => Some(r),
            _ => None,
        }
    }
}
