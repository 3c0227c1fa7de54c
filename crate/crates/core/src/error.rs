use thiserror::Error;

/// Errors raised by the palindromic-periodicity toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} does not fit alphabet of size {alphabet}")]
    LetterOutOfAlphabet { letter: u32, alphabet: u32 },

    #[error("cannot parse word: {0}")]
    Parse(String),

    #[error("cannot parse half-integer value `{0}`")]
    HalfPos(String),

    #[error("period must be positive")]
    ZeroPeriod,

    #[error("word must be non-empty")]
    EmptyWord,

    #[error("{0} is not a border length of the word")]
    NotBorder(usize),

    #[error("span [{start}..{end}] is invalid for a word of length {len}")]
    BadSpan { start: usize, end: usize, len: usize },

    #[error("centre {0} lies outside the word")]
    CentreOutOfRange(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: i64, max: i64 },

    #[error("premise does not hold: {0}")]
    Premise(String),

    #[error("hypothesis fails: {0}")]
    Hypothesis(String),

    #[error("derived fact failed verification: {0}")]
    Verification(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("requested size {requested} exceeds budget {budget}")]
    Budget { requested: usize, budget: usize },

    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status for the command-line tool: 2 for malformed or
    /// out-of-range input, 1 when a hypothesis or check fails on the letters.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::HalfPos(_)
            | Error::BadSpan { .. }
            | Error::CentreOutOfRange(_)
            | Error::IndexOutOfRange { .. }
            | Error::Budget { .. }
            | Error::UnknownName(_)
            | Error::ZeroPeriod
            | Error::EmptyWord
            | Error::LetterOutOfAlphabet { .. } => 2,
            _ => 1,
        }
    }
}
