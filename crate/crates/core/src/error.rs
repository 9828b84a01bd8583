use alloc::string::String;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("singular matrix ({0})")]
    Singular(String),

    #[error("degenerate metric at node {node}: {reason}")]
    DegenerateMetric { node: usize, reason: String },

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("not commutant-valued at node {node}, direction {direction}: violation {violation:e}")]
    NotCommutant {
        node: usize,
        direction: usize,
        violation: f64,
    },

    #[error("not antisymmetric at node {node}: pair ({a},{b}) violation {violation:e}")]
    NotAntisymmetric {
        node: usize,
        a: usize,
        b: usize,
        violation: f64,
    },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("too few nodes: {0}")]
    TooFewNodes(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
