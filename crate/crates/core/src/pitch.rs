//! Pitch arithmetic on the internal semitone lattice.
//!
//! Notes are indices `1..=68` on a semitone lattice whose class 1 is the
//! fundamental of the current mode. Everything here is a pure function over
//! small `Copy` values.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Lowest note index of the lattice.
pub const LOWEST_NOTE: u8 = 1;
/// Highest note index of the lattice.
pub const HIGHEST_NOTE: u8 = 68;

/// Step sizes in semitones (absolute value).
pub const STEP_SIZES: [i32; 2] = [1, 2];
/// Leap sizes in semitones (absolute value). The tritone and anything wider
/// than an octave are never legal.
pub const LEAP_SIZES: [i32; 7] = [3, 4, 5, 7, 8, 9, 12];

/// Harmonic intervals that are consonant for any number of parts.
pub const CONSONANT_INTERVALS: [u8; 6] = [0, 3, 4, 7, 8, 9];

/// A note on the semitone lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NoteIndex(u8);

impl NoteIndex {
    pub fn new(value: i64) -> Result<Self> {
        if (LOWEST_NOTE as i64..=HIGHEST_NOTE as i64).contains(&value) {
            Ok(NoteIndex(value as u8))
        } else {
            Err(Error::NoteOutOfRange(value))
        }
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    /// Chromatic class `1..=12`, class 1 being the fundamental.
    #[inline]
    pub fn class(self) -> u8 {
        (self.0 - 1) % 12 + 1
    }

    /// The note `delta` semitones away, if it stays on the lattice.
    pub fn offset(self, delta: i32) -> Option<NoteIndex> {
        NoteIndex::new(self.0 as i64 + delta as i64).ok()
    }

    /// Every note of the lattice in ascending order.
    pub fn all() -> impl Iterator<Item = NoteIndex> {
        (LOWEST_NOTE..=HIGHEST_NOTE).map(NoteIndex)
    }
}

impl fmt::Display for NoteIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Chromatic class of a raw note value. Fails outside the lattice.
pub fn chromatic_class(note: i64) -> Result<u8> {
    NoteIndex::new(note).map(NoteIndex::class)
}

/// Interval in semitones (mod 12) from `lower` up to `upper`.
///
/// The argument order matters: the fourth and the fifth are distinct
/// residues, so callers pass the upper voice first.
pub fn chromatic_interval(upper: u8, lower: u8) -> u8 {
    ((upper as i32 - lower as i32).rem_euclid(12)) as u8
}

/// Whether a harmonic interval is consonant. The fourth (5) is admitted once
/// three or more parts are sounding.
pub fn valid_harmonic_interval(interval: u8, part_count: usize) -> bool {
    CONSONANT_INTERVALS.contains(&interval) || (interval == 5 && part_count >= 3)
}

/// The five supported modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Major,
    Minor,
    Dorian,
    Lydian,
    Phrygian,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Major,
        Mode::Minor,
        Mode::Dorian,
        Mode::Lydian,
        Mode::Phrygian,
    ];

    /// Semitone offsets of the scale degrees above the fundamental.
    pub fn offsets(self) -> [u8; 7] {
        match self {
            Mode::Major => [0, 2, 4, 5, 7, 9, 11],
            // harmonic minor: raised seventh
            Mode::Minor => [0, 2, 3, 5, 7, 8, 11],
            Mode::Dorian => [0, 2, 3, 5, 7, 9, 10],
            Mode::Lydian => [0, 2, 4, 6, 7, 9, 11],
            Mode::Phrygian => [0, 1, 3, 5, 7, 8, 10],
        }
    }

    /// The seven chromatic classes (`1..=12`) of the mode, ascending.
    pub fn scale_set(self) -> [u8; 7] {
        self.offsets().map(|o| o + 1)
    }

    pub fn contains_class(self, class: u8) -> bool {
        self.offsets().contains(&(class.wrapping_sub(1)))
    }

    pub fn contains(self, note: NoteIndex) -> bool {
        self.contains_class(note.class())
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Major => "major",
            Mode::Minor => "minor",
            Mode::Dorian => "dorian",
            Mode::Lydian => "lydian",
            Mode::Phrygian => "phrygian",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName {
                kind: "mode",
                value: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotionKind {
    Repeat,
    Step,
    Leap,
    ToRest,
    FromRest,
    Illegal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
    None,
}

impl Direction {
    fn of(size: i32) -> Direction {
        match size.signum() {
            1 => Direction::Up,
            -1 => Direction::Down,
            _ => Direction::None,
        }
    }

    /// True for `Up`/`Down` pairs only.
    pub fn opposes(self, other: Direction) -> bool {
        matches!(
            (self, other),
            (Direction::Up, Direction::Down) | (Direction::Down, Direction::Up)
        )
    }
}

/// A classified transition between two consecutive events of one part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Motion {
    pub kind: MotionKind,
    pub direction: Direction,
    /// Signed size in semitones; zero for rest transitions.
    pub size: i32,
}

impl Motion {
    pub(crate) fn rest(kind: MotionKind) -> Motion {
        Motion {
            kind,
            direction: Direction::None,
            size: 0,
        }
    }

    pub fn is_step(&self) -> bool {
        self.kind == MotionKind::Step
    }

    pub fn is_leap(&self) -> bool {
        self.kind == MotionKind::Leap
    }

    /// Whether both endpoints are notes.
    pub fn between_notes(&self) -> bool {
        !matches!(self.kind, MotionKind::ToRest | MotionKind::FromRest)
    }
}

/// Classify the move from `from` to `to` within `mode`.
///
/// Steps and leaps must land on a scale note; any other delta, or a landing
/// off the scale, is `Illegal`.
pub fn classify_motion(from: NoteIndex, to: NoteIndex, mode: Mode) -> Motion {
    let size = to.value() as i32 - from.value() as i32;
    let magnitude = size.abs();
    let kind = if size == 0 {
        MotionKind::Repeat
    } else if !mode.contains(to) {
        MotionKind::Illegal
    } else if STEP_SIZES.contains(&magnitude) {
        MotionKind::Step
    } else if LEAP_SIZES.contains(&magnitude) {
        MotionKind::Leap
    } else {
        MotionKind::Illegal
    };
    Motion {
        kind,
        direction: Direction::of(size),
        size,
    }
}
