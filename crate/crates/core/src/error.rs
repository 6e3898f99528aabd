//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced while parsing, validating or analyzing automata.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum AutError {
    /// The document does not start with a valid `dpa v1` header or a
    /// directive line is malformed.
    #[error("line {line}: bad header or directive: {msg}")]
    BadHeader { line: usize, msg: String },

    /// The transition function is not total for plain input automata.
    #[error("missing edge from state {state} on symbol '{symbol}'")]
    MissingEdge { state: usize, symbol: String },

    /// A symbol does not belong to the automaton's alphabet.
    #[error("symbol '{0}' is not part of the alphabet")]
    UnknownSymbol(String),

    /// Two edges were declared for the same (state, symbol) pair.
    #[error("duplicate edge from state {state} on symbol '{symbol}'")]
    DuplicateEdge { state: usize, symbol: String },

    /// A plain input automaton declared a negative rank, or a rank line is
    /// malformed or missing.
    #[error("bad rank for state {state}: {msg}")]
    BadRank { state: usize, msg: String },

    /// Operations combining two automata require identical alphabets.
    #[error("alphabets must match")]
    AlphabetMismatch,

    /// The color function is undefined on infinite ranks.
    #[error("theta is undefined on infinite ranks")]
    InfiniteRank,

    /// Scores of empty infixes are undefined.
    #[error("score of an empty infix is undefined")]
    EmptyInfix,

    /// The component learner exceeded its configured state bound.
    #[error("vigor component learning diverged (bound {bound})")]
    Diverged { bound: usize },

    /// A forgetful automaton violates the structural invariants of the
    /// forgetful-parity acceptance condition.
    #[error("invalid forgetful automaton: {0}")]
    InvalidForgetful(String),

    /// A lasso analysis did not reach a periodic configuration within the
    /// safety cap.
    #[error("lasso analysis exceeded cap of {0} positions without cycling")]
    AnalysisCap(usize),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, AutError>;
