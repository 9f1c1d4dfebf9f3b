use thiserror::Error;

use crate::coxeter::CoxeterSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Coxeter system: {0}")]
    InvalidSpec(String),

    #[error("s{gen} is not a generator of {system}")]
    ForeignGenerator { gen: usize, system: CoxeterSpec },

    #[error("elements belong to different systems ({0} and {1})")]
    SystemMismatch(CoxeterSpec, CoxeterSpec),

    #[error("operation needs a {expected} system, got {actual}")]
    KindMismatch {
        expected: &'static str,
        actual: CoxeterSpec,
    },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("letter mismatch: {0}")]
    LetterMismatch(String),

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("morphism is not an idempotent")]
    NotIdempotent,

    #[error("incompatible morphisms: {0}")]
    Incompatible(String),

    #[error("{0} is infinite; a length bound is required")]
    Unbounded(CoxeterSpec),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
