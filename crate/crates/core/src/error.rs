use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("spectral radius is zero; the shift cannot be normalized")]
    ZeroSpectralRadius,
    #[error("characteristic polynomial has {remaining_degree} root(s) outside the Gaussian rationals")]
    IrrationalSpectrum { remaining_degree: usize },
    #[error("supplied spectrum rejected: {0}")]
    BadSuppliedSpectrum(String),
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),
    #[error("Jordan chain construction failed: {0}")]
    ChainDefect(String),
    #[error("unknown Jordan subspace ({eigen}, {chain})")]
    UnknownSubspace { eigen: usize, chain: usize },
    #[error("unknown eigenvalue index {0}")]
    UnknownEigenvalue(usize),
    #[error("signal has zero energy")]
    ZeroSignal,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("inconsistent dimensions: {0}")]
    InconsistentDimensions(String),
    #[error("node {node} outside 1..={node_count}")]
    UnknownNode { node: usize, node_count: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("conformance check failed: {0}")]
    Conformance(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::InconsistentDimensions(_)
            | Error::UnknownNode { .. }
            | Error::Config(_)
            | Error::Io(_) => 2,
            Error::IrrationalSpectrum { .. }
            | Error::BadSuppliedSpectrum(_)
            | Error::NotAnEigenvalue(_)
            | Error::ZeroSpectralRadius => 4,
            _ => 3,
        }
    }
}
