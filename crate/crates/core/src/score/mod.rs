//! The piece data model, the bundled ensemble styles and the fact-file
//! format used to exchange partial and complete pieces.

mod facts;
mod piece;
mod style;

pub use facts::{emit_facts, emit_partial, parse_facts};
pub use piece::{Event, PartialPiece, Piece, MAX_LENGTH, MAX_PARTS};
pub use style::{style_spec, PartRange, StartPolicy, Style, StyleSpec};
