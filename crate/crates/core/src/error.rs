use thiserror::Error;

/// Errors raised while building, parsing or validating pieces and trees.
///
/// Rule violations are *not* errors: they are reported as
/// [`ErrorRecord`](crate::rules::ErrorRecord) values by the diagnosis engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("note {0} is outside the note space 1..=68")]
    NoteOutOfRange(i64),

    #[error("chromatic class {0} is outside 1..=12")]
    ClassOutOfRange(i64),

    #[error("unknown {kind} `{value}`")]
    UnknownName { kind: &'static str, value: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: part {part} at time {time} is given both {first} and {second}")]
    Conflict {
        line: usize,
        part: usize,
        time: usize,
        first: String,
        second: String,
    },

    #[error("line {line}: note {note} is outside the style's note range {lo}..={hi}")]
    Range {
        line: usize,
        note: i64,
        lo: u8,
        hi: u8,
    },

    #[error("missing declaration: {0}")]
    Missing(&'static str),

    #[error("invalid piece: {0}")]
    InvalidPiece(String),

    #[error("pinned note {note} for part {part} at time {time} lies outside the part range {lo}..={hi}")]
    PinOutOfRange {
        part: usize,
        time: usize,
        note: u8,
        lo: u8,
        hi: u8,
    },

    #[error("invalid fraction: {0}")]
    Fraction(String),

    #[error("tree syntax error at byte {position}: {message}")]
    TreeSyntax { position: usize, message: String },

    #[error("invalid partition tree: {0}")]
    InvalidTree(String),

    #[error("tree has {leaves} leaves but the piece has {length} time steps")]
    LeafCount { leaves: usize, length: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
