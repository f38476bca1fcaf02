use crate::rhythm::TimedPiece;
use crate::score::{Event, Piece};

use super::{midi_pitch, pitch_name, Fundamental};

const INDENT: &str = "         ";

/// The three-row block per part: MIDI numbers, note names and the signed
/// interval between neighbours, `""` marking a repeat. Parts are separated
/// by a blank line.
///
/// ```
/// use cantus::pitch::Mode;
/// use cantus::render::{render_human, Fundamental};
/// use cantus::score::{Piece, Style};
/// let piece = Piece::from_notes(Style::Solo.spec(), Mode::Major, &[&[25, 27, 25]]).unwrap();
/// assert_eq!(
///     render_human(&piece, Fundamental::C),
///     "         | 48 50 48 \n         |  C  D  C \n         |   +2 -2 \n"
/// );
/// ```
pub fn render_human(piece: &Piece, fundamental: Fundamental) -> String {
    block(piece, fundamental, None)
}

/// [`render_human`] with a fourth row per part holding the rhythm tree.
pub fn render_human_timed(timed: &TimedPiece, fundamental: Fundamental) -> String {
    block(timed.piece(), fundamental, Some(&timed.tree().to_sexpr()))
}

fn block(piece: &Piece, fundamental: Fundamental, tree: Option<&str>) -> String {
    let mut parts = Vec::new();
    for part in piece.style().parts() {
        let midi: Vec<Option<i32>> = piece
            .part(part)
            .iter()
            .map(|e| e.note().map(|n| midi_pitch(n, fundamental)))
            .collect();
        let mut rows = vec![numbers(&midi), names(&midi), deltas(piece.part(part), &midi)];
        if let Some(t) = tree {
            rows.push(format!("| {t}"));
        }
        parts.push(rows.iter().map(|r| format!("{INDENT}{r}\n")).collect::<String>());
    }
    parts.join("\n")
}

fn numbers(midi: &[Option<i32>]) -> String {
    let cells: Vec<(String, bool)> = midi
        .iter()
        .map(|m| (m.map_or("-".to_string(), |m| m.to_string()), false))
        .collect();
    row(&cells)
}

/// Notes an octave or more above middle C get a tick per octave.
fn names(midi: &[Option<i32>]) -> String {
    let cells: Vec<(String, bool)> = midi
        .iter()
        .map(|m| match m {
            Some(m) => {
                let ticks = (m.div_euclid(12) - 5).max(0) as usize;
                (format!("{}{}", pitch_name(*m), "'".repeat(ticks.saturating_sub(1))), ticks > 0)
            }
            None => ("-".to_string(), false),
        })
        .collect();
    row(&cells)
}

/// Cells are right-aligned in a two-character field with a separator in
/// front; a trailing tick takes the following separator.
fn row(cells: &[(String, bool)]) -> String {
    let mut out = String::from("|");
    let mut tick = false;
    for (text, t) in cells {
        out.push(if tick { '\'' } else { ' ' });
        out.push_str(&format!("{text:>2}"));
        tick = *t;
    }
    out.push(if tick { '\'' } else { ' ' });
    out
}

fn deltas(events: &[Event], midi: &[Option<i32>]) -> String {
    let mut out = String::from("|  ");
    for (w, e) in midi.windows(2).zip(events.windows(2)) {
        out.push(' ');
        match (w[0], w[1]) {
            (Some(a), Some(b)) if a == b => out.push_str("\"\""),
            (Some(a), Some(b)) => out.push_str(&format!("{:+}", b - a)),
            _ if e[0] == e[1] => out.push_str("\"\""),
            _ => out.push('-'),
        }
    }
    out.push(' ');
    out
}
