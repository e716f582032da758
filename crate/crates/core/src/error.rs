use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("undeclared atom `{name}` at offset {position}")]
    UndeclaredAtom { name: String, position: usize },

    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),

    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),

    #[error("too many atoms: {count} declared, limit is {limit}")]
    AtomGuard { count: usize, limit: usize },

    #[error("antecedent is unsatisfiable")]
    UnsatisfiableAntecedent,

    #[error("family is empty")]
    EmptyFamily,

    #[error("family has {size} conditional events, limit for this procedure is {limit}")]
    SubsetGuard { size: usize, limit: usize },

    #[error("index {index} is out of range for a family of {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("assessment has {got} entries but the family has {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("value {0} is outside [0, 1]")]
    OutOfRange(String),

    #[error("linear system is infeasible")]
    Infeasible,

    #[error("simplex exceeded {0} pivots")]
    PivotLimit(usize),

    #[error("family is not p-consistent")]
    NotPConsistent,

    #[error("first conditional event is not included in the second")]
    NotIncluded,

    #[error("conditional events use different vocabularies")]
    VocabularyMismatch,

    #[error("union of the entailing subsets is not itself entailing")]
    NotAdditive,
}
