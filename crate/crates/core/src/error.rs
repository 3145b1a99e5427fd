use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("automata are over different alphabets")]
    AlphabetMismatch,

    #[error("the language is empty")]
    EmptyLanguage,

    #[error("the automaton does not accept the language of the quotient DFA")]
    LanguageMismatch,

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("symbol {symbol:?} at position {position} is not in the alphabet")]
    UnknownSymbol { symbol: char, position: usize },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("{what} is {actual}, above the limit of {limit}; pass the override flag to proceed")]
    Guardrail {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("{what} is {actual}, above the supported maximum of {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("no legal cover found with up to {0} grids")]
    SearchExhausted(usize),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}
