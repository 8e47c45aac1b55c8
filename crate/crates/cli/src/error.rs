use accr_core::GeometryError;
use thiserror::Error;

/// Everything that ends a run with exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid field `{field}`: {message}")]
    Field { field: String, message: String },

    #[error("{0}")]
    Geometry(#[from] GeometryError),

    #[error("{0}")]
    Usage(String),
}
