use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("2-adic valuation of 0 is undefined")]
    ZeroValuation,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "letter {letter} at position {position} is outside the alphabet of size {alphabet_len}"
    )]
    LetterOutsideAlphabet {
        letter: usize,
        position: usize,
        alphabet_len: usize,
    },

    #[error("morphism is not prolongable at symbol '{0}'")]
    NotProlongable(char),

    #[error("bad morphism rule #{index} '{rule}': {reason}")]
    MorphismParse {
        index: usize,
        rule: String,
        reason: String,
    },

    #[error("only {found} of {requested} class-set members found below scan bound {scanned}")]
    Shortfall {
        found: usize,
        requested: usize,
        scanned: u64,
    },

    #[error("requested tolerance {requested:e} is below the achievable floor {floor:e}")]
    ToleranceFloor { requested: f64, floor: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("truncation error bound {bound:e} exceeds requested accuracy {target:e}: {context}")]
    AccuracyNotReached {
        bound: f64,
        target: f64,
        context: String,
    },

    #[error("{path}: line {line}: {reason}")]
    BFileParse {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
