use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands built over different statistics, lattices or mode spaces.
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    /// An internal identity that must hold by construction did not.
    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("classification conflict: component(s) {components:?} couple through both symmetric and antisymmetric sectors")]
    ClassificationConflict { components: Vec<usize> },

    #[error("{source_name}:{line}: {field}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        field: String,
        message: String,
    },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
