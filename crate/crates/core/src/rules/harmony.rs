use crate::pitch::{chromatic_interval, valid_harmonic_interval, NoteIndex};
use crate::score::{Piece, StyleSpec};

use super::{ErrorRecord, Reason};

/// Widest allowed gap between neighbouring parts: an octave and a major third.
pub const MAX_PART_DISTANCE: u8 = 16;

/// Harmony violations between part `upper` and part `upper + 1` sounding
/// `hi` and `lo`, reported against the upper part.
pub(crate) fn pair_violations(
    style: &StyleSpec,
    hi: NoteIndex,
    lo: NoteIndex,
) -> impl Iterator<Item = Reason> {
    let interval = chromatic_interval(hi.class(), lo.class());
    let consonant = valid_harmonic_interval(interval, style.part_count)
        || style.extra_valid_intervals.contains(&interval);
    [
        (!consonant).then_some(Reason::DissonantInterval),
        (hi.value() > lo.value() + MAX_PART_DISTANCE).then_some(Reason::OverMaximumDistance),
        (hi < lo).then_some(Reason::PartsCross),
    ]
    .into_iter()
    .flatten()
}

/// Vertical rules between neighbouring parts at each time step.
pub fn check_harmony(piece: &Piece) -> Vec<ErrorRecord> {
    let mut out = Vec::new();
    let style = piece.style();
    for time in 1..=piece.length() {
        for upper in 1..style.part_count {
            let (Some(hi), Some(lo)) = (
                piece.event(upper, time).note(),
                piece.event(upper + 1, time).note(),
            ) else {
                continue;
            };
            out.extend(
                pair_violations(style, hi, lo).map(|r| ErrorRecord::new(upper, time, r)),
            );
        }
    }
    out
}
