use crate::pitch::{chromatic_interval, valid_harmonic_interval, Motion, MotionKind, NoteIndex};
use crate::rhythm::ExtremeNotes;
use crate::rules::harmony::pair_violations;
use crate::rules::melody::{impulse_at, in_window, pair};
use crate::rules::{transition, Reason};
use crate::score::{Event, PartialPiece, Piece, StyleSpec};

use super::{seeded_shuffle, SolveConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Stop,
    Budget,
}

pub(crate) struct Search<'a> {
    cfg: &'a SolveConfig,
    parts: usize,
    length: usize,
    /// Value order per cell, indexed by `(time - 1) * parts + part - 1`.
    domains: Vec<Vec<Event>>,
    /// `[part - 1][time - 1]`
    grid: Vec<Vec<Event>>,
    /// `[part - 1][u - 1]`, the move from `u` to `u + 1`.
    motions: Vec<Vec<Motion>>,
    nodes: u64,
}

impl<'a> Search<'a> {
    pub(crate) fn new(cfg: &'a SolveConfig, pins: Option<&PartialPiece>) -> Self {
        let parts = cfg.style.part_count;
        let length = cfg.length;
        let mut domains = Vec::with_capacity(parts * length);
        for time in 1..=length {
            for part in 1..=parts {
                let d = match pins.and_then(|p| p.get(part, time)) {
                    Some(e) => vec![e],
                    None => base_domain(cfg, part, time),
                };
                let k = domains.len() as u64;
                domains.push(seeded_shuffle(&d, cfg.seed, k));
            }
        }
        let placeholder = Motion {
            kind: MotionKind::ToRest,
            direction: crate::pitch::Direction::None,
            size: 0,
        };
        Search {
            cfg,
            parts,
            length,
            domains,
            grid: vec![vec![Event::Rest; length]; parts],
            motions: vec![vec![placeholder; length.saturating_sub(1)]; parts],
            nodes: 0,
        }
    }

    /// Depth-first search; `found` returns `false` to stop.
    pub(crate) fn run(&mut self, found: &mut dyn FnMut(Piece) -> bool) -> Flow {
        self.dfs(0, found)
    }

    fn dfs(&mut self, k: usize, found: &mut dyn FnMut(Piece) -> bool) -> Flow {
        if k == self.domains.len() {
            let piece = Piece::new(self.cfg.style.clone(), self.cfg.mode, self.grid.clone())
                .expect("search grid is well formed");
            return if found(piece) { Flow::Continue } else { Flow::Stop };
        }
        let part = k % self.parts + 1;
        let time = k / self.parts + 1;
        for i in 0..self.domains[k].len() {
            self.nodes += 1;
            if self.cfg.node_budget.is_some_and(|b| self.nodes > b) {
                return Flow::Budget;
            }
            let e = self.domains[k][i];
            self.grid[part - 1][time - 1] = e;
            if time >= 2 {
                let prev = self.grid[part - 1][time - 2];
                self.motions[part - 1][time - 2] = transition(prev, e, self.cfg.mode);
            }
            if self.consistent(part, time) {
                match self.dfs(k + 1, found) {
                    Flow::Continue => {}
                    other => return other,
                }
            }
        }
        Flow::Continue
    }

    /// Every rule whose last cell is (part, time).
    fn consistent(&self, part: usize, time: usize) -> bool {
        let row = &self.grid[part - 1];
        if !self.part_ok(part, time, row, &self.motions[part - 1]) {
            return false;
        }
        if part >= 2 {
            if let (Some(hi), Some(lo)) = (self.grid[part - 2][time - 1].note(), row[time - 1].note()) {
                let rules = &self.cfg.rule_config;
                if pair_violations(&self.cfg.style, hi, lo).any(|r| rules.is_enabled(r)) {
                    return false;
                }
            }
        }
        // forward check: the part must still have a valid continuation of
        // its own to the final step
        let mut events = row.clone();
        let mut motions = self.motions[part - 1].clone();
        self.can_finish(part, time, &mut events, &mut motions)
    }

    /// Whether the part on its own can still be carried to the final step.
    fn can_finish(
        &self,
        part: usize,
        time: usize,
        events: &mut [Event],
        motions: &mut [Motion],
    ) -> bool {
        if time == self.length {
            return true;
        }
        let next = time + 1;
        let domain = &self.domains[(next - 1) * self.parts + part - 1];
        for &e in domain {
            events[next - 1] = e;
            motions[next - 2] = transition(events[next - 2], e, self.cfg.mode);
            if self.part_ok(part, next, events, motions)
                && self.can_finish(part, next, events, motions)
            {
                return true;
            }
        }
        false
    }

    /// The rules of one part alone whose last cell is `time`. `events` and
    /// `motions` hold the part's line up to `time`.
    fn part_ok(&self, part: usize, time: usize, events: &[Event], motions: &[Motion]) -> bool {
        let rules = &self.cfg.rule_config;
        let style = &self.cfg.style;
        let on = |r| rules.is_enabled(r);
        let event = events[time - 1];

        match event {
            Event::Rest => {
                if !style.rests_allowed && on(Reason::NoRest) {
                    return false;
                }
            }
            Event::Note(n) => {
                if on(Reason::IncorrectProgression) && !style.part_range(part).contains(n) {
                    return false;
                }
            }
        }
        if time == 1
            && on(Reason::IncorrectStartingNote)
            && !matches!(event, Event::Note(n) if style.start_ok(part, n))
        {
            return false;
        }
        if time == self.length
            && on(Reason::IncorrectFinalNote)
            && !matches!(event, Event::Note(n) if style.final_ok(part, n))
        {
            return false;
        }
        if !self.extremes_ok(&events[..time]) {
            return false;
        }
        if time >= 2 {
            let motions = &motions[..time - 1];
            if motions[time - 2].kind == MotionKind::Illegal && on(Reason::IncorrectProgression) {
                return false;
            }
            if style.is_melodic(part) && !self.melodic_ok(time, &events[..time], motions) {
                return false;
            }
        }
        true
    }

    /// The rhythm constraint on a part's line so far. A checked extreme must
    /// lie on a slow step, so a note on a fast step needs some slow note
    /// strictly beyond it; once no slow step is left, that note must already
    /// be there.
    fn extremes_ok(&self, events: &[Event]) -> bool {
        let Some(rhythm) = &self.cfg.rhythm else {
            return true;
        };
        if rhythm.extremes == ExtremeNotes::Off {
            return true;
        }
        let time = events.len();
        if rhythm.slow[time..].iter().any(|&s| s) {
            return true;
        }
        let notes = |slow: bool| {
            events
                .iter()
                .zip(&rhythm.slow)
                .filter(move |(_, &s)| s == slow)
                .filter_map(|(e, _)| e.note())
        };
        let (Some(fast_lo), Some(fast_hi)) = (notes(false).min(), notes(false).max()) else {
            return true;
        };
        let below = notes(true).min().is_some_and(|n| n < fast_lo);
        let above = notes(true).max().is_some_and(|n| n > fast_hi);
        below && (above || rhythm.extremes == ExtremeNotes::Lowest)
    }

    fn melodic_ok(&self, time: usize, events: &[Event], motions: &[Motion]) -> bool {
        let rules = &self.cfg.rule_config;
        let on = |r| rules.is_enabled(r);
        // the move just made is motion `u`
        let u = time - 1;
        let m = motions[u - 1];

        if m.kind == MotionKind::Repeat && on(Reason::RepeatedNoteInMelody) {
            return false;
        }
        if m.kind == MotionKind::Leap
            && m.size.abs() == 12
            && on(Reason::OctaveLeapOffFundamental)
            && events[u - 1].note().is_some_and(|n| n.class() != 1)
        {
            return false;
        }
        let window = rules.repeat_window();
        if on(Reason::RepeatedNotes) && matches!(m.kind, MotionKind::Step | MotionKind::Leap) {
            let repeated = (1..u)
                .filter(|&t1| in_window(t1, u, window))
                .any(|t1| motions[t1 - 1] == m && events[t1 - 1] == events[u - 1]);
            if repeated {
                return false;
            }
        }
        if u >= 2 {
            if let Some(p2) = pair(motions, u - 2) {
                let t2 = u - 1;
                if on(Reason::RepeatedPattern) {
                    let repeated = (1..t2)
                        .filter(|&t1| in_window(t1, t2, window))
                        .any(|t1| pair(motions, t1 - 1) == Some(p2));
                    if repeated {
                        return false;
                    }
                }
                if on(Reason::SplitMelody)
                    && t2 >= 3
                    && p2.0.signum() * p2.1.signum() == -1
                    && pair(motions, t2 - 3) == Some(p2)
                {
                    return false;
                }
            }
        }
        if on(Reason::UnresolvedImpulse) && u >= 2 {
            if let Some(dir) = impulse_at(motions, u) {
                if !m.direction.opposes(dir) {
                    return false;
                }
            }
        }
        if time == self.length && on(Reason::DissonantContour) {
            if let Some((lo, hi)) = extremes(events) {
                if lo < hi
                    && !valid_harmonic_interval(chromatic_interval(hi.class(), lo.class()), 2)
                {
                    return false;
                }
            }
        }
        true
    }
}

fn extremes(events: &[Event]) -> Option<(NoteIndex, NoteIndex)> {
    let mut notes = events.iter().filter_map(|e| e.note());
    let first = notes.next()?;
    Some(notes.fold((first, first), |(lo, hi), n| (lo.min(n), hi.max(n))))
}

/// Candidate values of a free cell, with the unary rules applied up front.
fn base_domain(cfg: &SolveConfig, part: usize, time: usize) -> Vec<Event> {
    let style: &StyleSpec = &cfg.style;
    let on = |r| cfg.rule_config.is_enabled(r);
    let range = if on(Reason::IncorrectProgression) {
        style.part_range(part)
    } else {
        style.note_range
    };
    let rests = style.rests_allowed || !on(Reason::NoRest);
    let mut notes: Vec<NoteIndex> = range.notes().collect();

    if time == 1 && on(Reason::IncorrectStartingNote) {
        notes.retain(|&n| style.start_ok(part, n));
    }
    if time == cfg.length && on(Reason::IncorrectFinalNote) {
        notes.retain(|&n| style.final_ok(part, n));
    }
    // Without rests, a note after the first is reached by a step or leap
    // (landing on the scale) or by repeating its predecessor. Off-scale notes
    // can then only appear if the first note may be off the scale.
    if time >= 2 && on(Reason::IncorrectProgression) && !rests {
        let first_may_be_off = range
            .notes()
            .filter(|&n| !on(Reason::IncorrectStartingNote) || style.start_ok(part, n))
            .any(|n| !cfg.mode.contains(n));
        if !first_may_be_off {
            notes.retain(|&n| cfg.mode.contains(n));
        }
    }

    let mut out: Vec<Event> = notes.into_iter().map(Event::Note).collect();
    let rest_here = rests
        && !(time == 1 && on(Reason::IncorrectStartingNote))
        && !(time == cfg.length && on(Reason::IncorrectFinalNote));
    if rest_here {
        out.push(Event::Rest);
    }
    out
}

