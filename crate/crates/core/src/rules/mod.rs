//! The rule catalogue and the diagnosis engine.
//!
//! Every rule violation is an [`ErrorRecord`]: a part, a time step and a
//! reason string from the closed [`Reason`] catalogue. Composition asks for
//! pieces with no records at all; diagnosis reports them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pitch::{classify_motion, Motion, MotionKind};
use crate::score::{Event, Piece};

pub(crate) mod harmony;
pub(crate) mod melody;
mod progression;
mod style;

pub use harmony::check_harmony;
pub use melody::check_melody;
pub use progression::check_progression;
pub use style::check_style;

/// Default look-ahead window for the repetition rules.
pub const DEFAULT_REPEAT_WINDOW: usize = 8;

/// The closed catalogue of diagnostic reasons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reason {
    IncorrectProgression,
    RepeatedNoteInMelody,
    OctaveLeapOffFundamental,
    RepeatedNotes,
    RepeatedPattern,
    SplitMelody,
    DissonantContour,
    UnresolvedImpulse,
    DissonantInterval,
    OverMaximumDistance,
    PartsCross,
    IncorrectStartingNote,
    IncorrectFinalNote,
    NoRest,
    /// Raised when attaching a rhythm, not by [`diagnose`].
    ExtremeNoteTooShort,
}

impl Reason {
    pub const ALL: [Reason; 15] = [
        Reason::IncorrectProgression,
        Reason::RepeatedNoteInMelody,
        Reason::OctaveLeapOffFundamental,
        Reason::RepeatedNotes,
        Reason::RepeatedPattern,
        Reason::SplitMelody,
        Reason::DissonantContour,
        Reason::UnresolvedImpulse,
        Reason::DissonantInterval,
        Reason::OverMaximumDistance,
        Reason::PartsCross,
        Reason::IncorrectStartingNote,
        Reason::IncorrectFinalNote,
        Reason::NoRest,
        Reason::ExtremeNoteTooShort,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Reason::IncorrectProgression => "Incorrect progression",
            Reason::RepeatedNoteInMelody => "No repeated notes in melodic parts",
            Reason::OctaveLeapOffFundamental => {
                "Leap of an octave from a note other than the fundamental"
            }
            Reason::RepeatedNotes => "Repeated notes",
            Reason::RepeatedPattern => "Repeated pattern",
            Reason::SplitMelody => "Split melody",
            Reason::DissonantContour => "Dissonant contour",
            Reason::UnresolvedImpulse => "Unresolved impulse",
            Reason::DissonantInterval => "Dissonant interval between parts",
            Reason::OverMaximumDistance => "Over maximum distance between parts",
            Reason::PartsCross => "Parts can not cross",
            Reason::IncorrectStartingNote => "Incorrect starting note",
            Reason::IncorrectFinalNote => "Incorrect final note",
            Reason::NoRest => "No rest for the wicked",
            Reason::ExtremeNoteTooShort => "Extreme note too short",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Reason {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Reason::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "reason",
                value: s.to_string(),
            })
    }
}

/// One rule violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ErrorRecord {
    pub part: usize,
    pub time: usize,
    pub reason: Reason,
}

impl ErrorRecord {
    pub fn new(part: usize, time: usize, reason: Reason) -> Self {
        ErrorRecord { part, time, reason }
    }
}

impl Ord for ErrorRecord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.time, self.part, self.reason.as_str()).cmp(&(
            other.time,
            other.part,
            other.reason.as_str(),
        ))
    }
}

impl PartialOrd for ErrorRecord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ErrorRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error({},{},\"{}\")", self.part, self.time, self.reason)
    }
}

/// Tunables of the rule set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    repeat_window: usize,
    enabled: BTreeSet<Reason>,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            repeat_window: DEFAULT_REPEAT_WINDOW,
            enabled: Reason::ALL.into_iter().collect(),
        }
    }
}

impl RuleConfig {
    pub fn with_repeat_window(mut self, window: usize) -> Result<Self> {
        if window < 2 {
            return Err(Error::InvalidPiece(format!(
                "repeat window {window} must be at least 2"
            )));
        }
        self.repeat_window = window;
        Ok(self)
    }

    pub fn repeat_window(&self) -> usize {
        self.repeat_window
    }

    pub fn is_enabled(&self, reason: Reason) -> bool {
        self.enabled.contains(&reason)
    }

    pub fn set_enabled(&mut self, reason: Reason, on: bool) {
        if on {
            self.enabled.insert(reason);
        } else {
            self.enabled.remove(&reason);
        }
    }

    pub fn disable(mut self, reason: Reason) -> Self {
        self.set_enabled(reason, false);
        self
    }

    /// A configuration with every rule switched off.
    pub fn none() -> Self {
        RuleConfig {
            enabled: BTreeSet::new(),
            ..Default::default()
        }
    }
}

/// Every violation in `piece`, deduplicated and sorted by (time, part, reason).
/// An empty list means the piece is valid.
pub fn diagnose(piece: &Piece, config: &RuleConfig) -> Vec<ErrorRecord> {
    let mut all = check_progression(piece);
    all.extend(check_melody(piece, config));
    all.extend(check_harmony(piece));
    all.extend(check_style(piece));
    all.retain(|e| config.is_enabled(e.reason));
    all.sort();
    all.dedup();
    all
}

/// Render records one per line, as `error(P,T,"Reason")`.
pub fn format_records(records: &[ErrorRecord]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

/// Classify the transition between two consecutive events.
pub(crate) fn transition(from: Event, to: Event, mode: crate::pitch::Mode) -> Motion {
    match (from, to) {
        (Event::Note(a), Event::Note(b)) => classify_motion(a, b, mode),
        (Event::Note(_), Event::Rest) | (Event::Rest, Event::Rest) => {
            Motion::rest(MotionKind::ToRest)
        }
        (Event::Rest, Event::Note(_)) => Motion::rest(MotionKind::FromRest),
    }
}

/// Motions of one part; index `u - 1` holds the move from time `u` to `u + 1`.
pub(crate) fn part_motions(piece: &Piece, part: usize) -> Vec<Motion> {
    piece
        .part(part)
        .windows(2)
        .map(|w| transition(w[0], w[1], piece.mode()))
        .collect()
}
