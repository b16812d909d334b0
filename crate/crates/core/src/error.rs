use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field context mismatch: GF(2^{0}) vs GF(2^{1})")]
    ContextMismatch(u8, u8),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no Conway modulus for degree {0}")]
    UnsupportedDegree(u32),
    #[error("cannot embed GF(2^{0}) into GF(2^{1})")]
    NotEmbeddable(u8, u8),
    #[error("element bits {bits:#x} out of range for GF(2^{k})")]
    BitsOutOfRange { k: u8, bits: u64 },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("zero form has no root locus")]
    ZeroForm,
    #[error("inseparable: a1 = a3 = 0")]
    Inseparable,
    #[error("condition violated: {0}")]
    Validation(String),
    #[error("required field extension exceeds the modulus table (need degree {0})")]
    ExtensionCap(u32),
    #[error("surface is not smooth")]
    NotSmooth,
    #[error("not a normal form: {0}")]
    NotNormalForm(String),
    #[error("elimination degenerated: {0}")]
    Degenerate(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
