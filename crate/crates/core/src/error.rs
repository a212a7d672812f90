use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A requested size exceeds a configured enumeration or matrix cap.
    #[error("size {requested} exceeds the configured limit {limit}")]
    SizeLimit { requested: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two operands disagree on flavor, kind or length.
    #[error("incompatible operands: {0}")]
    Mismatch(String),

    /// A point outside the domain of an analytic evaluator.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("functional inversion did not converge after {iterations} iterations (last residual {residual:e})")]
    InversionFailure { iterations: usize, residual: f64 },

    #[error("singular point: {0}")]
    Singularity(String),

    /// Malformed structured input. `field` is a path to the offending field.
    #[error("schema error at `{field}`: {message}")]
    Schema { field: String, message: String },
}

impl Error {
    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }
}
