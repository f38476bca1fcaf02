use crate::rhythm::{Fraction, TimedPiece};
use crate::score::Piece;

use super::{midi_pitch, Fundamental};

/// `part,onset,duration,midi` per sounding note, times in seconds with six
/// decimals, sorted by onset then part. Rests produce no line.
///
/// Each time is rounded once on the microsecond grid and durations are
/// differences of rounded onsets, so a part's durations add up to exactly
/// `whole_seconds`.
pub fn render_events(timed: &TimedPiece, fundamental: Fundamental, whole_seconds: f64) -> String {
    lines(timed.piece(), timed.onsets(), fundamental, whole_seconds)
}

/// [`render_events`] with every time step the same length.
///
/// ```
/// use cantus::pitch::Mode;
/// use cantus::render::{render_piece_events, Fundamental};
/// use cantus::score::{Piece, Style};
/// let piece = Piece::from_notes(Style::Solo.spec(), Mode::Major, &[&[25, 27]]).unwrap();
/// assert_eq!(
///     render_piece_events(&piece, Fundamental::C, 10.0),
///     "1,0.000000,5.000000,48\n1,5.000000,5.000000,50\n"
/// );
/// ```
pub fn render_piece_events(piece: &Piece, fundamental: Fundamental, whole_seconds: f64) -> String {
    let t = piece.length() as u64;
    let onsets: Vec<Fraction> = (0..t)
        .map(|k| Fraction::new(k, t).expect("positive length"))
        .collect();
    lines(piece, &onsets, fundamental, whole_seconds)
}

fn micros(f: Fraction, whole_seconds: f64) -> i64 {
    (f.num() as f64 * whole_seconds * 1e6 / f.den() as f64).round() as i64
}

fn lines(piece: &Piece, onsets: &[Fraction], fundamental: Fundamental, whole_seconds: f64) -> String {
    let mut bounds: Vec<i64> = onsets.iter().map(|&f| micros(f, whole_seconds)).collect();
    bounds.push(micros(Fraction::ONE, whole_seconds));
    let mut events = Vec::new();
    for part in piece.style().parts() {
        for (i, e) in piece.part(part).iter().enumerate() {
            if let Some(n) = e.note() {
                events.push((bounds[i], part, bounds[i + 1] - bounds[i], midi_pitch(n, fundamental)));
            }
        }
    }
    events.sort();
    events
        .iter()
        .map(|&(onset, part, dur, midi)| format!("{part},{},{},{midi}\n", seconds(onset), seconds(dur)))
        .collect()
}

fn seconds(us: i64) -> String {
    let sign = if us < 0 { "-" } else { "" };
    format!("{sign}{}.{:06}", us.abs() / 1_000_000, us.abs() % 1_000_000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pitch::Mode;
    use crate::rhythm::{attach_rhythm, PartitionTree};
    use crate::score::{parse_facts, Event, Style};

    fn duet() -> TimedPiece {
        let piece = parse_facts(include_str!("../../tests/data/lydian_duet.lp"))
            .unwrap()
            .to_piece()
            .unwrap();
        let tree = PartitionTree::from_sexpr(include_str!("../../tests/data/lydian_duet.tree").trim())
            .unwrap();
        attach_rhythm(&piece, &tree).unwrap()
    }

    fn parse(text: &str) -> Vec<(usize, f64, f64, i32)> {
        text.lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
            })
            .collect()
    }

    #[test]
    fn even_two_leaf_tree() {
        let piece = Piece::from_notes(Style::Solo.spec(), Mode::Major, &[&[25, 27]]).unwrap();
        let tp = attach_rhythm(&piece, &PartitionTree::from_sexpr("(X X)").unwrap()).unwrap();
        let ev = parse(&render_events(&tp, Fundamental::C, 10.0));
        assert_eq!(ev[0].1, 0.0);
        assert_eq!(ev[1].1, 5.0);
    }

    #[test]
    fn duet_onsets_scale_exactly() {
        let tp = duet();
        let text = render_events(&tp, Fundamental::F, 36.0);
        let ev = parse(&text);
        assert_eq!(ev.len(), 24);
        // fifth leaf, both parts
        let onset = tp.onset(5);
        let expected = 36.0 * onset.num() as f64 / onset.den() as f64;
        assert_eq!(ev[8].1, expected);
        assert_eq!(ev[9].1, expected);
        assert_eq!((ev[8].0, ev[9].0), (1, 2));
        for part in [1, 2] {
            let total: f64 = ev.iter().filter(|e| e.0 == part).map(|e| e.2).sum();
            assert!((total - 36.0).abs() < 1e-6);
        }
        assert!(ev.windows(2).all(|w| (w[0].1, w[0].0) <= (w[1].1, w[1].0)));
    }

    #[test]
    fn rests_are_silent() {
        let piece = Piece::from_notes(Style::Solo.spec(), Mode::Major, &[&[25, 27, 25]])
            .unwrap()
            .with_event(1, 2, Event::Rest);
        let text = render_piece_events(&piece, Fundamental::C, 3.0);
        assert_eq!(text, "1,0.000000,1.000000,48\n1,2.000000,1.000000,48\n");
    }

    #[test]
    fn thirds_telescope() {
        let piece = Piece::from_notes(Style::Solo.spec(), Mode::Major, &[&[25, 27, 25]]).unwrap();
        let ev = parse(&render_piece_events(&piece, Fundamental::C, 1.0));
        let durs: Vec<f64> = ev.iter().map(|e| e.2).collect();
        assert_eq!(durs, vec![0.333333, 0.333334, 0.333333]);
    }
}
