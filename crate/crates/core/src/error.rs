use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid lexeme label {0:?}: expected \"<CAT>.<lemma>\"")]
    InvalidLexeme(String),

    #[error("empty graph")]
    EmptyGraph,

    #[error("unknown lexeme {0}")]
    UnknownLexeme(String),

    #[error("exact walk refused: component of {vertices} vertices exceeds the budget of {budget}")]
    OracleBudget { vertices: usize, budget: usize },

    #[error("no pairs: the largest component has fewer than two vertices")]
    NoPairs,

    #[error("C undefined: no vertex has two or more neighbours")]
    ClusteringUndefined,

    #[error("degenerate distribution: {distinct} distinct degree value(s), need at least 3")]
    DegenerateDistribution { distinct: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed query {query:?}: {reason}")]
    MalformedQuery { query: String, reason: String },

    #[error("unsupported focus position in {0:?}: only the governor may carry the focus marker")]
    UnsupportedFocus(String),

    #[error("snapshot: {0}")]
    Snapshot(String),

    #[error("line {line}: query references unknown film {film:?}")]
    UnknownFilm { line: usize, film: String },

    #[error("empty gold data")]
    EmptyGold,

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
