use thiserror::Error;

use crate::word::Role;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),

    #[error("0 is not a chord id")]
    ZeroToken,

    #[error("chord {chord} occurs {count} time(s), expected exactly 2")]
    ChordMultiplicity { chord: u32, count: usize },

    #[error("chord {chord} occurs twice as a {role}")]
    RepeatedRole { chord: u32, role: Role },

    #[error("unknown chord {0}")]
    UnknownChord(u32),

    #[error("arc index {index} out of range 0..={max}")]
    InvalidArc { index: usize, max: usize },

    #[error("word is not realizable on the sphere (genus {genus})")]
    NonRealizable { genus: usize },

    #[error("move instance was generated from a different word")]
    StaleMove,

    #[error("unknown move kind `{0}`")]
    UnknownMoveKind(String),

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed projection table line {line}: {reason}")]
    ProjectionTable { line: usize, reason: String },
}

impl Error {
    /// Short machine-readable tag, used for JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedToken(_) => "malformed_token",
            Error::ZeroToken => "zero_token",
            Error::ChordMultiplicity { .. } => "chord_multiplicity",
            Error::RepeatedRole { .. } => "repeated_role",
            Error::UnknownChord(_) => "unknown_chord",
            Error::InvalidArc { .. } => "invalid_arc",
            Error::NonRealizable { .. } => "non_realizable",
            Error::StaleMove => "stale_move",
            Error::UnknownMoveKind(_) => "unknown_move_kind",
            Error::UnknownColumn(_) => "unknown_column",
            Error::Io(_) => "io",
            Error::ProjectionTable { .. } => "projection_table",
        }
    }
}
