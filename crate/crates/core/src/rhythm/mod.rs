//! Exact rational time: Farey sequences, partition trees built from binary
//! and ternary subdivisions, beat strengths, metrical tables and the
//! attachment of a rhythm to a piece.

mod enumerate;
mod farey;
mod fraction;
mod meter;
mod timed;
mod tree;

pub use enumerate::{enumerate_trees, LayerCaps, TreeStream};
pub use farey::{farey, mediant};
pub use fraction::Fraction;
pub use meter::{
    format_hierarchy, format_polyrhythm, metrical_hierarchy, polyrhythm_table, MeterSignature,
    MetricalLevels, PolyrhythmTable,
};
pub use timed::{
    attach_rhythm, attach_rhythm_with, extreme_note_violations, AttachError, ExtremeNotes,
    TimedPiece,
};
pub use tree::{BeatStrength, Layer, Layering, LeafInfo, Node, PartitionTree};
