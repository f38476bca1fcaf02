//! Rules that apply to melodic parts only.

use crate::pitch::{chromatic_interval, valid_harmonic_interval, Direction, Motion, MotionKind};
use crate::score::Piece;

use super::{part_motions, ErrorRecord, Reason, RuleConfig};

/// Signed delta pair starting at motion index `i` (0-based), if both moves
/// are between notes.
pub(crate) fn pair(motions: &[Motion], i: usize) -> Option<(i32, i32)> {
    let (a, b) = (motions.get(i)?, motions.get(i + 1)?);
    (a.between_notes() && b.between_notes()).then_some((a.size, b.size))
}

/// Whether `later` falls in the repetition window opened at `earlier`.
pub(crate) fn in_window(earlier: usize, later: usize, window: usize) -> bool {
    earlier + 1 < later && later < earlier + 2 + window
}

/// Direction of the impulse arriving at time `u` (1-based), if any. `motions`
/// is indexed by `time - 1`.
pub(crate) fn impulse_at(motions: &[Motion], u: usize) -> Option<Direction> {
    // leap at u - 1
    let prev = motions.get(u.checked_sub(2)?)?;
    if prev.kind == MotionKind::Leap {
        return Some(prev.direction);
    }
    // three same-direction steps at u - 3, u - 2, u - 1
    if u >= 4 {
        let run = &motions[u - 4..u - 1];
        let d = run[0].direction;
        if run.iter().all(|m| m.kind == MotionKind::Step && m.direction == d) {
            return Some(d);
        }
    }
    None
}

/// Melodic rules: repetition, octave leaps, repeated figures, split
/// melodies, contour and impulse resolution.
pub fn check_melody(piece: &Piece, config: &RuleConfig) -> Vec<ErrorRecord> {
    let mut out = Vec::new();
    let window = config.repeat_window();
    let t = piece.length();
    for part in piece.style().parts().filter(|&p| piece.style().is_melodic(p)) {
        let events = piece.part(part);
        let motions = part_motions(piece, part);
        let mut push = |time: usize, reason| out.push(ErrorRecord::new(part, time, reason));

        for (i, m) in motions.iter().enumerate() {
            let time = i + 1;
            if m.kind == MotionKind::Repeat {
                push(time, Reason::RepeatedNoteInMelody);
            }
            if m.kind == MotionKind::Leap && m.size.abs() == 12 {
                let from = events[i].note().expect("leaps start on a note");
                if from.class() != 1 {
                    push(time, Reason::OctaveLeapOffFundamental);
                }
            }
        }

        // the same note left by the same step or leap again shortly after
        for t1 in 1..t {
            let m1 = motions[t1 - 1];
            if !matches!(m1.kind, MotionKind::Step | MotionKind::Leap) {
                continue;
            }
            let hit = (t1 + 2..t).filter(|&t2| in_window(t1, t2, window)).any(|t2| {
                motions[t2 - 1] == m1 && events[t2 - 1] == events[t1 - 1]
            });
            if hit {
                push(t1, Reason::RepeatedNotes);
            }
        }

        // exact delta pairs recurring within the window, reported at the
        // earlier occurrence
        for t1 in 1..t.saturating_sub(1) {
            let Some(p1) = pair(&motions, t1 - 1) else {
                continue;
            };
            let hit = (t1 + 2..t - 1)
                .filter(|&t2| in_window(t1, t2, window))
                .any(|t2| pair(&motions, t2 - 1) == Some(p1));
            if hit {
                push(t1, Reason::RepeatedPattern);
            }
            // a zigzag repeated immediately: odd and even notes form two lines
            let zigzag = p1.0.signum() * p1.1.signum() == -1;
            if zigzag && pair(&motions, t1 + 1) == Some(p1) {
                push(t1, Reason::SplitMelody);
            }
        }

        if let Some((lo, hi)) = piece.extremes(part) {
            if lo < hi && !valid_harmonic_interval(chromatic_interval(hi.class(), lo.class()), 2) {
                push(t, Reason::DissonantContour);
            }
        }

        for u in 2..t {
            if let Some(dir) = impulse_at(&motions, u) {
                if !motions[u - 1].direction.opposes(dir) {
                    push(u, Reason::UnresolvedImpulse);
                }
            }
        }
    }
    out
}
