use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::pitch::{Mode, NoteIndex};

use super::style::StyleSpec;

/// Maximum supported piece length.
pub const MAX_LENGTH: usize = 64;
/// Maximum supported number of parts.
pub const MAX_PARTS: usize = 4;

/// What one part does at one time step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Note(NoteIndex),
    Rest,
}

impl Event {
    pub fn note(self) -> Option<NoteIndex> {
        match self {
            Event::Note(n) => Some(n),
            Event::Rest => None,
        }
    }
}

impl From<NoteIndex> for Event {
    fn from(n: NoteIndex) -> Self {
        Event::Note(n)
    }
}

/// A complete piece: exactly one event for every (part, time) cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    style: StyleSpec,
    mode: Mode,
    // grid[part - 1][time - 1]
    grid: Vec<Vec<Event>>,
}

impl Piece {
    /// Build a piece from one row of events per part.
    pub fn new(style: StyleSpec, mode: Mode, rows: Vec<Vec<Event>>) -> Result<Self> {
        if rows.len() != style.part_count {
            return Err(Error::InvalidPiece(format!(
                "{} rows given for a {}-part style",
                rows.len(),
                style.part_count
            )));
        }
        let length = rows.first().map_or(0, Vec::len);
        check_length(length)?;
        if rows.iter().any(|r| r.len() != length) {
            return Err(Error::InvalidPiece("parts have different lengths".into()));
        }
        for row in &rows {
            for e in row {
                if let Event::Note(n) = e {
                    if !style.note_range.contains(*n) {
                        return Err(Error::InvalidPiece(format!(
                            "note {n} outside the style's note range"
                        )));
                    }
                }
            }
        }
        Ok(Piece {
            style,
            mode,
            grid: rows,
        })
    }

    /// Convenience constructor from raw note values (no rests).
    pub fn from_notes(style: StyleSpec, mode: Mode, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| NoteIndex::new(v).map(Event::Note))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Piece::new(style, mode, rows)
    }

    pub fn style(&self) -> &StyleSpec {
        &self.style
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn length(&self) -> usize {
        self.grid[0].len()
    }

    pub fn part_count(&self) -> usize {
        self.grid.len()
    }

    /// The event of `part` (1-based) at `time` (1-based).
    pub fn event(&self, part: usize, time: usize) -> Event {
        self.grid[part - 1][time - 1]
    }

    /// All events of one part, time-ordered.
    pub fn part(&self, part: usize) -> &[Event] {
        &self.grid[part - 1]
    }

    pub fn rows(&self) -> &[Vec<Event>] {
        &self.grid
    }

    pub fn with_event(mut self, part: usize, time: usize, event: Event) -> Self {
        self.grid[part - 1][time - 1] = event;
        self
    }

    /// Lowest and highest note of a part, ignoring rests.
    pub fn extremes(&self, part: usize) -> Option<(NoteIndex, NoteIndex)> {
        let notes = self.part(part).iter().filter_map(|e| e.note());
        notes.fold(None, |acc, n| match acc {
            None => Some((n, n)),
            Some((lo, hi)) => Some((lo.min(n), hi.max(n))),
        })
    }
}

pub(crate) fn check_length(length: usize) -> Result<()> {
    if !(2..=MAX_LENGTH).contains(&length) {
        return Err(Error::InvalidPiece(format!(
            "length {length} outside 2..={MAX_LENGTH}"
        )));
    }
    Ok(())
}

/// A piece where only some cells are fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPiece {
    pub style: StyleSpec,
    pub mode: Mode,
    pub length: usize,
    /// Fixed cells keyed by (part, time).
    pub cells: BTreeMap<(usize, usize), Event>,
}

impl PartialPiece {
    pub fn new(style: StyleSpec, mode: Mode, length: usize) -> Result<Self> {
        check_length(length)?;
        Ok(PartialPiece {
            style,
            mode,
            length,
            cells: BTreeMap::new(),
        })
    }

    /// Pin one cell. Fails when the cell lies outside the grid.
    pub fn pin(&mut self, part: usize, time: usize, event: Event) -> Result<()> {
        if part == 0 || part > self.style.part_count || time == 0 || time > self.length {
            return Err(Error::InvalidPiece(format!(
                "cell ({part}, {time}) outside {} parts x {} steps",
                self.style.part_count, self.length
            )));
        }
        self.cells.insert((part, time), event);
        Ok(())
    }

    pub fn get(&self, part: usize, time: usize) -> Option<Event> {
        self.cells.get(&(part, time)).copied()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.len() == self.style.part_count * self.length
    }

    /// The complete piece, if every cell is fixed.
    pub fn to_piece(&self) -> Result<Piece> {
        if !self.is_complete() {
            return Err(Error::InvalidPiece(format!(
                "{} of {} cells are given",
                self.cells.len(),
                self.style.part_count * self.length
            )));
        }
        let rows = (1..=self.style.part_count)
            .map(|p| (1..=self.length).map(|t| self.cells[&(p, t)]).collect())
            .collect();
        Piece::new(self.style.clone(), self.mode, rows)
    }
}

impl From<&Piece> for PartialPiece {
    fn from(p: &Piece) -> Self {
        let mut cells = BTreeMap::new();
        for part in 1..=p.part_count() {
            for time in 1..=p.length() {
                cells.insert((part, time), p.event(part, time));
            }
        }
        PartialPiece {
            style: p.style().clone(),
            mode: p.mode(),
            length: p.length(),
            cells,
        }
    }
}
