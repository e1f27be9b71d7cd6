use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("column order is not a bijection onto the nonzero {m}-bit values: {reason}")]
    InvalidColumnOrder { m: usize, reason: String },

    #[error("matrix rows are linearly dependent (rank {rank} < {rows} rows)")]
    RankDeficient { rows: usize, rank: usize },

    #[error("not a Hamming code: {0}")]
    NotHamming(String),

    #[error("puncturing position {position} collapses the code (dimension {before} -> {after})")]
    DimensionCollapse {
        position: usize,
        before: usize,
        after: usize,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("recipe {recipe}: computed uniformity {computed} but expected {expected}")]
    RecipeMismatch {
        recipe: String,
        expected: usize,
        computed: String,
    },

    #[error("missing import: {0}")]
    MissingImport(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
