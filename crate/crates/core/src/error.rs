use thiserror::Error;

use crate::structure::PathCount;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate arc label `{0}`")]
    DuplicateArcLabel(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("arc `{0}` is a self-loop")]
    SelfLoop(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("source and sink are the same vertex `{0}`")]
    SourceEqualsSink(String),
    #[error("network contains a directed cycle")]
    NotAcyclic,
    #[error("arc `{arc}` lies on {count} s-t paths, expected exactly one")]
    NotUnique { arc: String, count: PathCount },
    #[error("more than {limit} s-t paths")]
    PathLimitExceeded { limit: usize },
    #[error("unknown arc `{0}`")]
    UnknownArcId(String),
    #[error("game has {players} players, limit is {limit}")]
    TooManyPlayers { players: usize, limit: usize },
    #[error("not a permutation of the players: {0}")]
    NotAPermutation(String),
    #[error("allocation is not efficient: pays out {allocated}, grand coalition is worth {value}")]
    NotEfficient { allocated: String, value: String },
    #[error("allocation does not match the player set: {0}")]
    PlayerSetMismatch(String),
    #[error("allocation scheme is incomplete: {0}")]
    IncompleteScheme(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A rejected instance document, with the 1-based line it was found on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("duplicate arc label `{0}`")]
    DuplicateArcLabel(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("negative capacity `{0}`")]
    NegativeCapacity(String),
    #[error("arc `{0}` is a self-loop")]
    SelfLoop(String),
    #[error("source and sink are the same vertex `{0}`")]
    SourceEqualsSink(String),
}
