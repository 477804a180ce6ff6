use thiserror::Error;

/// Library-wide error type. Every variant maps to a stable, module-qualified
/// code via [`Error::code`], which the CLI prints on failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("square {square} appears more than once in the {family} cycles")]
    DuplicateSquare { square: usize, family: &'static str },

    #[error("square {square} is missing from the {family} cycles")]
    MissingSquare { square: usize, family: &'static str },

    #[error("bad flip entry: {msg}")]
    BadFlip { msg: String },

    #[error("curve system is not filling: {msg}")]
    NonFilling { msg: String },

    #[error("surface is not connected")]
    Disconnected,

    #[error("traversal step {step}: {msg}")]
    InconsistentTraversal { step: usize, msg: String },

    #[error("curves are not in general position: {msg}")]
    NotTransverse { msg: String },

    #[error("homology rank {actual} does not match 2g = {expected}")]
    RankMismatch { expected: usize, actual: usize },

    #[error("homology class is not invariant under the twist word")]
    ClassNotInvariant,

    #[error("cycle is not nullhomologous; winding area is undefined")]
    NotNullhomologous,

    #[error("cannot parse twist word: {msg}")]
    WordSyntax { msg: String },

    #[error("unknown curve name `{name}`")]
    UnknownCurve { name: String },

    #[error("internal invariant violated: {msg}")]
    Internal { msg: String },

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "surface/SYNTAX",
            Error::DuplicateSquare { .. } => "surface/DUPLICATE_SQUARE",
            Error::MissingSquare { .. } => "surface/MISSING_SQUARE",
            Error::BadFlip { .. } => "surface/BAD_FLIP",
            Error::NonFilling { .. } => "surface/NON_FILLING",
            Error::Disconnected => "surface/DISCONNECTED",
            Error::InconsistentTraversal { .. } => "curves/INCONSISTENT_TRAVERSAL",
            Error::NotTransverse { .. } => "curves/NOT_TRANSVERSE",
            Error::RankMismatch { .. } => "homology/RANK_MISMATCH",
            Error::ClassNotInvariant => "flux/CLASS_NOT_INVARIANT",
            Error::NotNullhomologous => "flux/NOT_NULLHOMOLOGOUS",
            Error::WordSyntax { .. } => "twists/WORD_SYNTAX",
            Error::UnknownCurve { .. } => "twists/UNKNOWN_CURVE",
            Error::Internal { .. } => "internal/INVARIANT",
            Error::Io(_) => "cli/IO",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
