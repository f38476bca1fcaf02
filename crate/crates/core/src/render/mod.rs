//! Output formats: MIDI numbers, the human-readable block, score-engraver
//! source and a timed event list.

mod engraver;
mod events;
mod human;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pitch::NoteIndex;

pub use engraver::{render_engraver, render_engraver_timed};
pub use events::{render_events, render_piece_events};
pub use human::{render_human, render_human_timed};

/// Internal note 1 sits this many semitones above MIDI 0 under fundamental c.
pub const MIDI_BASE: i32 = 23;

const SHARP_NAMES: [&str; 12] = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"];

/// The pitch letter that chromatic class 1 sounds as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Fundamental {
    #[default]
    C,
    D,
    E,
    F,
    G,
    A,
    B,
}

impl Fundamental {
    pub const ALL: [Fundamental; 7] = [
        Fundamental::C,
        Fundamental::D,
        Fundamental::E,
        Fundamental::F,
        Fundamental::G,
        Fundamental::A,
        Fundamental::B,
    ];

    /// Semitones above c.
    pub fn offset(self) -> i32 {
        match self {
            Fundamental::C => 0,
            Fundamental::D => 2,
            Fundamental::E => 4,
            Fundamental::F => 5,
            Fundamental::G => 7,
            Fundamental::A => 9,
            Fundamental::B => 11,
        }
    }

    pub fn letter(self) -> char {
        ['c', 'd', 'e', 'f', 'g', 'a', 'b'][Fundamental::ALL.iter().position(|&f| f == self).unwrap()]
    }
}

impl fmt::Display for Fundamental {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Fundamental {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Fundamental::ALL
            .into_iter()
            .find(|f| lower.len() == 1 && lower.starts_with(f.letter()))
            .ok_or_else(|| Error::UnknownName {
                kind: "fundamental",
                value: s.to_string(),
            })
    }
}

/// MIDI key number of `note`.
///
/// ```
/// use cantus::pitch::NoteIndex;
/// use cantus::render::{midi_pitch, Fundamental};
/// assert_eq!(midi_pitch(NoteIndex::new(25).unwrap(), Fundamental::C), 48);
/// assert_eq!(midi_pitch(NoteIndex::new(37).unwrap(), Fundamental::F), 65);
/// ```
pub fn midi_pitch(note: NoteIndex, fundamental: Fundamental) -> i32 {
    note.value() as i32 + MIDI_BASE + fundamental.offset()
}

/// Letter name of a MIDI pitch, sharps only.
pub fn pitch_name(midi: i32) -> &'static str {
    SHARP_NAMES[midi.rem_euclid(12) as usize]
}
