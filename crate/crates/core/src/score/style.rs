use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pitch::{NoteIndex, HIGHEST_NOTE, LOWEST_NOTE};

/// The bundled ensemble styles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Style {
    Solo,
    Duet,
    Trio,
    Quartet,
}

impl Style {
    pub const ALL: [Style; 4] = [Style::Solo, Style::Duet, Style::Trio, Style::Quartet];

    pub fn name(self) -> &'static str {
        match self {
            Style::Solo => "solo",
            Style::Duet => "duet",
            Style::Trio => "trio",
            Style::Quartet => "quartet",
        }
    }

    pub fn spec(self) -> StyleSpec {
        style_spec(self)
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Style {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Style::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName {
                kind: "style",
                value: s.to_string(),
            })
    }
}

/// How the first note of each part is constrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StartPolicy {
    /// One fixed note per part, indexed by part id − 1.
    ExactNotes(Vec<NoteIndex>),
    /// Any note whose chromatic class is in the set.
    DegreeChoice(BTreeSet<u8>),
}

/// Inclusive note range of one part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartRange {
    pub lo: NoteIndex,
    pub hi: NoteIndex,
}

impl PartRange {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        let (lo, hi) = (NoteIndex::new(lo)?, NoteIndex::new(hi)?);
        if lo > hi {
            return Err(Error::InvalidPiece(format!("empty part range {lo}..={hi}")));
        }
        Ok(PartRange { lo, hi })
    }

    /// `center − 12 ..= center + 12`, clipped to the lattice.
    fn around(center: u8) -> Self {
        let lo = center.saturating_sub(12).max(LOWEST_NOTE);
        let hi = (center + 12).min(HIGHEST_NOTE);
        PartRange {
            lo: NoteIndex::new(lo as i64).unwrap(),
            hi: NoteIndex::new(hi as i64).unwrap(),
        }
    }

    pub fn contains(&self, note: NoteIndex) -> bool {
        self.lo <= note && note <= self.hi
    }

    pub fn notes(&self) -> impl Iterator<Item = NoteIndex> {
        let (lo, hi) = (self.lo.value(), self.hi.value());
        (lo..=hi).map(|v| NoteIndex::new(v as i64).unwrap())
    }
}

/// Per-style configuration of an ensemble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StyleSpec {
    pub name: Style,
    pub part_count: usize,
    /// Parts subject to the melodic rule set. Part 1 is the top voice.
    pub melodic_parts: BTreeSet<usize>,
    pub lowest_part: usize,
    /// Notes a fact file may mention at all.
    pub note_range: PartRange,
    /// Range each part must stay within, indexed by part id − 1.
    pub part_ranges: Vec<PartRange>,
    pub start_policy: StartPolicy,
    /// Classes a melodic part may end on.
    pub melodic_final_classes: BTreeSet<u8>,
    /// Classes any other part may end on.
    pub final_classes: BTreeSet<u8>,
    pub rests_allowed: bool,
    /// Harmonic intervals admitted on top of the consonant set.
    pub extra_valid_intervals: BTreeSet<u8>,
}

impl StyleSpec {
    pub fn is_melodic(&self, part: usize) -> bool {
        self.melodic_parts.contains(&part)
    }

    pub fn part_range(&self, part: usize) -> PartRange {
        self.part_ranges[part - 1]
    }

    pub fn parts(&self) -> impl Iterator<Item = usize> {
        1..=self.part_count
    }

    /// Whether the part's first note satisfies the start policy.
    pub fn start_ok(&self, part: usize, note: NoteIndex) -> bool {
        match &self.start_policy {
            StartPolicy::ExactNotes(notes) => notes[part - 1] == note,
            StartPolicy::DegreeChoice(classes) => classes.contains(&note.class()),
        }
    }

    /// Whether the part's last note satisfies the final-note policy.
    pub fn final_ok(&self, part: usize, note: NoteIndex) -> bool {
        let classes = if self.is_melodic(part) {
            &self.melodic_final_classes
        } else {
            &self.final_classes
        };
        classes.contains(&note.class())
    }

    /// Replace the range of one part (used to shrink search spaces).
    pub fn with_part_range(mut self, part: usize, range: PartRange) -> Self {
        self.part_ranges[part - 1] = range;
        self
    }

    pub fn with_start_policy(mut self, policy: StartPolicy) -> Self {
        self.start_policy = policy;
        self
    }
}

fn set<T: Ord + Copy>(items: &[T]) -> BTreeSet<T> {
    items.iter().copied().collect()
}

/// The full specification of a bundled style.
pub fn style_spec(name: Style) -> StyleSpec {
    let full = PartRange::new(LOWEST_NOTE as i64, HIGHEST_NOTE as i64).unwrap();
    let degrees = StartPolicy::DegreeChoice(set(&[1, 8]));
    let base = |part_count: usize, part_ranges: Vec<PartRange>, start_policy| StyleSpec {
        name,
        part_count,
        melodic_parts: set(&[1]),
        lowest_part: part_count,
        note_range: full,
        part_ranges,
        start_policy,
        melodic_final_classes: set(&[1]),
        final_classes: set(&[1, 8]),
        rests_allowed: false,
        extra_valid_intervals: BTreeSet::new(),
    };
    // Degree-choice ranges cover a start on either the fundamental or the
    // fifth above the reference note, one octave either side.
    let degree_range = |reference: u8| PartRange {
        lo: PartRange::around(reference).lo,
        hi: PartRange::around(reference + 7).hi,
    };
    match name {
        Style::Solo => base(1, vec![degree_range(25)], degrees),
        Style::Duet => base(2, vec![degree_range(37), degree_range(25)], degrees),
        Style::Trio => {
            let mut spec = base(
                3,
                vec![degree_range(37), degree_range(25), degree_range(13)],
                degrees,
            );
            spec.extra_valid_intervals = set(&[5]);
            spec
        }
        Style::Quartet => {
            let starts = [44u8, 37, 32, 25];
            let mut spec = base(
                4,
                starts.iter().map(|&s| PartRange::around(s)).collect(),
                StartPolicy::ExactNotes(
                    starts
                        .iter()
                        .map(|&s| NoteIndex::new(s as i64).unwrap())
                        .collect(),
                ),
            );
            spec.extra_valid_intervals = set(&[5]);
            spec
        }
    }
}
