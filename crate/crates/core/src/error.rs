//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad field specification: {0}")]
    BadFieldSpec(String),

    #[error("bad scalar literal: {0}")]
    BadScalar(String),

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown object: {0}")]
    UnknownObject(String),

    #[error("non-admissible presentation: {0}")]
    NonAdmissible(String),

    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("torsion pair violation: nonzero morphism {witness}")]
    TorsionPairViolation { witness: String },

    #[error("vertex {0} is not a source")]
    NotASource(String),

    #[error("presentation is not exact: {0}")]
    NonExactPresentation(String),

    #[error("morphism is not idempotent: {0}")]
    NotIdempotent(String),

    #[error("invalid splitting data: {0}")]
    BadSplitData(String),

    #[error("not an epimorphism: {0}")]
    NotEpi(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
