use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sub basis vector {index} is not contained in the total space")]
    NotASubspace { index: usize },
    #[error("composite of differentials is nonzero ({rows}x{cols} block)")]
    NotAComplex { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is not a cycle")]
    NotACycle,
    #[error("elements live over different algebras: {0}")]
    MixedAlgebras(String),
    #[error("slice (degree {degree}, weight {weight}) is not finite: generator {generator} has weight 0")]
    InfiniteSlice { degree: i64, weight: u32, generator: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid coalgebra: {0}")]
    InvalidCoalgebra(String),
    #[error("pairing is degenerate: {0}")]
    DegenerateForm(String),
    #[error("representation dimension must be at least 1")]
    ZeroDimension,
}

pub type Result<T> = std::result::Result<T, Error>;
