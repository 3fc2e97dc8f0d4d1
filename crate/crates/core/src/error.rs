use thiserror::Error;

/// Errors produced by the algebraic and groupoid layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A presentation is malformed: unknown generator, mismatched tables,
    /// inhomogeneous image, bad degree.
    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("structure constants are not antisymmetric at f^{i}_{{{j}{k}}}")]
    Antisymmetry { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails at (i, j, k, l) = ({i}, {j}, {k}, {l})")]
    Jacobi { i: usize, j: usize, k: usize, l: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The requested degree/level window cannot represent the answer.
    #[error("window incomplete: {0}")]
    WindowIncomplete(String),

    #[error("linear system is inconsistent")]
    Inconsistent,

    /// A mathematical check failed; the message names the first counterexample.
    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("groupoid error: {0}")]
    Groupoid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn presentation(msg: impl Into<String>) -> Error {
    Error::Presentation(msg.into())
}
