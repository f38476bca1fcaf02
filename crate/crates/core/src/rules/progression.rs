use crate::pitch::MotionKind;
use crate::score::{Event, Piece};

use super::{part_motions, ErrorRecord, Reason};

/// Illegal moves, and rests where the style forbids them.
pub fn check_progression(piece: &Piece) -> Vec<ErrorRecord> {
    let mut out = Vec::new();
    for part in piece.style().parts() {
        for (i, m) in part_motions(piece, part).iter().enumerate() {
            if m.kind == MotionKind::Illegal {
                out.push(ErrorRecord::new(part, i + 1, Reason::IncorrectProgression));
            }
        }
        if !piece.style().rests_allowed {
            for (i, e) in piece.part(part).iter().enumerate() {
                if *e == Event::Rest {
                    out.push(ErrorRecord::new(part, i + 1, Reason::NoRest));
                }
            }
        }
    }
    out
}
