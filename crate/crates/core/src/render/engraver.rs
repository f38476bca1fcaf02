use std::fmt::Write as _;

use crate::rhythm::{Fraction, TimedPiece};
use crate::score::Piece;

use super::{midi_pitch, Fundamental};

const LILY_NAMES: [&str; 12] = ["c", "cis", "d", "dis", "e", "f", "fis", "g", "gis", "a", "ais", "b"];

/// LilyPond source with one staff per part, a whole note per time step.
pub fn render_engraver(piece: &Piece, fundamental: Fundamental) -> String {
    let durations = vec![Fraction::ONE; piece.length()];
    score(piece, &durations, fundamental)
}

/// LilyPond source for a piece with its rhythm. Each measure of the tree
/// lasts a whole note.
pub fn render_engraver_timed(timed: &TimedPiece, fundamental: Fundamental) -> String {
    let measures = timed.tree().measure_count() as u64;
    let durations: Vec<Fraction> = timed.durations().iter().map(|d| d.scale(measures, 1)).collect();
    score(timed.piece(), &durations, fundamental)
}

fn score(piece: &Piece, durations: &[Fraction], fundamental: Fundamental) -> String {
    let mut out = String::from("\\version \"2.24.0\"\n\\score {\n  <<\n");
    for part in piece.style().parts() {
        let events = piece.part(part);
        let notes: Vec<i32> = events
            .iter()
            .filter_map(|e| e.note().map(|n| midi_pitch(n, fundamental)))
            .collect();
        let low = notes.iter().sum::<i32>() < 60 * notes.len() as i32;
        let _ = writeln!(out, "    \\new Staff \\with {{ instrumentName = \"{part}\" }} {{");
        let _ = writeln!(out, "      \\clef {}", if low { "bass" } else { "treble" });
        let tokens: Vec<String> = events
            .iter()
            .zip(durations)
            .map(|(e, &d)| {
                let pitch = e.note().map_or("r".to_string(), |n| lily_pitch(midi_pitch(n, fundamental)));
                format!("{pitch}{}", lily_duration(d))
            })
            .collect();
        let _ = writeln!(out, "      {}", tokens.join(" "));
        out.push_str("    }\n");
    }
    out.push_str("  >>\n  \\layout { }\n}\n");
    out
}

/// Absolute LilyPond pitch; `c'` is MIDI 60.
fn lily_pitch(midi: i32) -> String {
    let octave = midi.div_euclid(12) - 4;
    let marks = if octave >= 0 { "'".repeat(octave as usize) } else { ",".repeat((-octave) as usize) };
    format!("{}{marks}", LILY_NAMES[midi.rem_euclid(12) as usize])
}

/// `d` in whole notes: a plain power-of-two value when there is one, else
/// a scaled whole note.
fn lily_duration(d: Fraction) -> String {
    if d.num() == 1 && d.den().is_power_of_two() {
        d.den().to_string()
    } else if d.den() == 1 {
        format!("1*{}", d.num())
    } else {
        format!("1*{}/{}", d.num(), d.den())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pitch::Mode;
    use crate::rhythm::{attach_rhythm, PartitionTree};
    use crate::score::{parse_facts, Style};

    fn tunes() -> Piece {
        parse_facts(include_str!("../../tests/data/tunes.lp")).unwrap().to_piece().unwrap()
    }

    #[test]
    fn pitch_names() {
        assert_eq!(lily_pitch(60), "c'");
        assert_eq!(lily_pitch(48), "c");
        assert_eq!(lily_pitch(47), "b,");
        assert_eq!(lily_pitch(78), "fis''");
    }

    #[test]
    fn durations() {
        let f = |n, d| Fraction::new(n, d).unwrap();
        assert_eq!(lily_duration(f(1, 1)), "1");
        assert_eq!(lily_duration(f(1, 8)), "8");
        assert_eq!(lily_duration(f(1, 12)), "1*1/12");
        assert_eq!(lily_duration(f(3, 8)), "1*3/8");
        assert_eq!(lily_duration(f(2, 1)), "1*2");
    }

    #[test]
    fn tunes_staff_has_every_note_in_order() {
        let text = render_engraver(&tunes(), Fundamental::C);
        let line = text.lines().find(|l| l.trim_start().starts_with('g')).unwrap();
        let tokens: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(tokens.len(), 16);
        assert_eq!(&tokens[..4], ["g1", "c'1", "c1", "d1"]);
        assert_eq!(text, render_engraver(&tunes(), Fundamental::C));
    }

    #[test]
    fn quartet_staves_in_part_order() {
        let piece = Piece::from_notes(
            Style::Quartet.spec(),
            Mode::Major,
            &[&[49, 49], &[44, 44], &[37, 37], &[25, 25]],
        )
        .unwrap();
        let text = render_engraver(&piece, Fundamental::C);
        let staves: Vec<usize> = text.match_indices("instrumentName = \"").map(|(i, _)| i).collect();
        assert_eq!(staves.len(), 4);
        for (k, &i) in staves.iter().enumerate() {
            assert!(text[i..].starts_with(&format!("instrumentName = \"{}\"", k + 1)));
        }
    }

    #[test]
    fn duet_tree_durations_fill_one_measure_each() {
        let piece = parse_facts(include_str!("../../tests/data/lydian_duet.lp"))
            .unwrap()
            .to_piece()
            .unwrap();
        let tree = PartitionTree::from_sexpr(include_str!("../../tests/data/lydian_duet.tree").trim())
            .unwrap();
        let text = render_engraver_timed(&attach_rhythm(&piece, &tree).unwrap(), Fundamental::F);
        assert!(text.contains("f'4 g'4 f'4 f''4 e''4 a'1*1/12 b'1*1/12 e''1*1/12 c''8 d''8 e''8 f''8"));
    }
}
