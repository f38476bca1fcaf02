use crate::error::{Error, Result};
use crate::rules::{ErrorRecord, Reason};
use crate::score::{Event, Piece};

use super::tree::{BeatStrength, PartitionTree};
use super::Fraction;

/// Which extreme notes of each part must fall on the slowest leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExtremeNotes {
    /// Only the lowest note of each part.
    #[default]
    Lowest,
    LowestAndHighest,
    /// No check.
    Off,
}

/// A piece with one rhythm shared by all parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimedPiece {
    piece: Piece,
    tree: PartitionTree,
    onsets: Vec<Fraction>,
    durations: Vec<Fraction>,
    classes: Vec<usize>,
    strengths: Vec<BeatStrength>,
}

impl TimedPiece {
    pub fn piece(&self) -> &Piece {
        &self.piece
    }

    pub fn tree(&self) -> &PartitionTree {
        &self.tree
    }

    /// Onset of time step `time` (1-based), the same in every part.
    pub fn onset(&self, time: usize) -> Fraction {
        self.onsets[time - 1]
    }

    pub fn duration(&self, time: usize) -> Fraction {
        self.durations[time - 1]
    }

    pub fn duration_class(&self, time: usize) -> usize {
        self.classes[time - 1]
    }

    pub fn strength(&self, time: usize) -> BeatStrength {
        self.strengths[time - 1]
    }

    pub fn onsets(&self) -> &[Fraction] {
        &self.onsets
    }

    pub fn durations(&self) -> &[Fraction] {
        &self.durations
    }
}

/// Why a rhythm could not be attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttachError {
    Structure(Error),
    /// Extreme notes placed on fast leaves.
    Violations(Vec<ErrorRecord>),
}

/// Attach `tree` to every part of `piece`, checking the lowest notes only.
pub fn attach_rhythm(piece: &Piece, tree: &PartitionTree) -> Result<TimedPiece, AttachError> {
    attach_rhythm_with(piece, tree, ExtremeNotes::default())
}

/// Attach `tree` to every part of `piece`. Each time step that holds one of
/// a part's checked extreme notes must have duration class 1.
pub fn attach_rhythm_with(
    piece: &Piece,
    tree: &PartitionTree,
    extremes: ExtremeNotes,
) -> Result<TimedPiece, AttachError> {
    if tree.leaf_count() != piece.length() {
        return Err(AttachError::Structure(Error::LeafCount {
            leaves: tree.leaf_count(),
            length: piece.length(),
        }));
    }
    let info = tree.beat_info();
    let classes: Vec<usize> = info.iter().map(|i| i.duration_class).collect();
    let errors = extreme_note_violations(piece, &classes, extremes);
    if !errors.is_empty() {
        return Err(AttachError::Violations(errors));
    }
    Ok(TimedPiece {
        piece: piece.clone(),
        tree: tree.clone(),
        onsets: tree.leaf_onsets(),
        durations: tree.leaf_durations(),
        classes,
        strengths: info.iter().map(|i| i.strength).collect(),
    })
}

/// `(P, T, "Extreme note too short")` for every checked extreme note of a
/// part sitting on a leaf with duration class above 1.
pub fn extreme_note_violations(
    piece: &Piece,
    classes: &[usize],
    extremes: ExtremeNotes,
) -> Vec<ErrorRecord> {
    let mut out = Vec::new();
    if extremes == ExtremeNotes::Off {
        return out;
    }
    for part in piece.style().parts() {
        let Some((lo, hi)) = piece.extremes(part) else {
            continue;
        };
        for (i, e) in piece.part(part).iter().enumerate() {
            let Event::Note(n) = *e else { continue };
            let checked = n == lo || (extremes == ExtremeNotes::LowestAndHighest && n == hi);
            if checked && classes[i] > 1 {
                out.push(ErrorRecord::new(part, i + 1, Reason::ExtremeNoteTooShort));
            }
        }
    }
    out.sort();
    out
}
