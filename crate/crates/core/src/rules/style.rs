use crate::score::{Event, Piece};

use super::{ErrorRecord, Reason};

/// Start-note, final-note and range policies of the piece's style.
pub fn check_style(piece: &Piece) -> Vec<ErrorRecord> {
    let mut out = Vec::new();
    let style = piece.style();
    let t = piece.length();
    for part in style.parts() {
        let events = piece.part(part);
        let starts_well = matches!(events[0], Event::Note(n) if style.start_ok(part, n));
        if !starts_well {
            out.push(ErrorRecord::new(part, 1, Reason::IncorrectStartingNote));
        }
        let ends_well = matches!(events[t - 1], Event::Note(n) if style.final_ok(part, n));
        if !ends_well {
            out.push(ErrorRecord::new(part, t, Reason::IncorrectFinalNote));
        }
        let range = style.part_range(part);
        for (i, e) in events.iter().enumerate() {
            if matches!(e, Event::Note(n) if !range.contains(*n)) {
                out.push(ErrorRecord::new(part, i + 1, Reason::IncorrectProgression));
            }
        }
    }
    out
}
