use thiserror::Error;

/// Errors produced by parsing, validation and the operations that require
/// particular homotopy data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("duplicate symbol `{0}` in alpha")]
    DuplicateSymbol(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("{map} is not an involution: {detail}")]
    NotInvolution { map: &'static str, detail: String },

    #[error("unknown preset `{0}` (expected `gauss` or `vknot`)")]
    UnknownPreset(String),

    #[error("phrase `{text}`: {msg}")]
    Phrase { text: String, msg: String },

    #[error("component count mismatch: {left} vs {right}")]
    ComponentMismatch { left: usize, right: usize },

    #[error("homotopy data has no nu involution")]
    MissingNu,

    #[error("S must be diagonal")]
    NonDiagonalS,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("group structure mismatch: {0}")]
    StructureMismatch(String),
}

impl Error {
    /// True for malformed input text, false for well-formed input that
    /// violates an operation's precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Config { .. }
                | Error::DuplicateSymbol(_)
                | Error::UnknownSymbol(_)
                | Error::NotInvolution { .. }
                | Error::UnknownPreset(_)
                | Error::Phrase { .. }
        )
    }

    pub(crate) fn phrase(text: &str, msg: impl Into<String>) -> Self {
        Error::Phrase {
            text: text.to_string(),
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
