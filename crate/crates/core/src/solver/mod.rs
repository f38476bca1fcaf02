//! Seeded backtracking search over the piece grid.
//!
//! Cells are filled column by column (every part at time `T` before any part
//! at `T + 1`) so the vertical rules prune as early as the horizontal ones.
//! Each rule is checked the moment the last cell it depends on is assigned;
//! a complete assignment that survives every check is exactly a piece that
//! [`diagnose`](crate::rules::diagnose) accepts.

mod search;
mod shuffle;

pub use shuffle::{seeded_shuffle, SplitMix64};

use crate::error::{Error, Result};
use crate::pitch::Mode;
use crate::rhythm::{ExtremeNotes, PartitionTree};
use crate::rules::RuleConfig;
use crate::score::{PartialPiece, Piece, StyleSpec, MAX_LENGTH};

use search::{Flow, Search};

/// Default search budget, in attempted cell assignments.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// The seed used when none is given.
pub const DEFAULT_SEED: u64 = 6298;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    pub style: StyleSpec,
    pub mode: Mode,
    pub length: usize,
    pub rule_config: RuleConfig,
    pub seed: u64,
    /// `None` means unbounded.
    pub node_budget: Option<u64>,
    /// Rhythm the piece will be set to, if any.
    pub rhythm: Option<RhythmConstraint>,
}

/// Time steps that may hold a part's extreme notes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhythmConstraint {
    /// `slow[time - 1]` is true for leaves of duration class 1.
    pub slow: Vec<bool>,
    pub extremes: ExtremeNotes,
}

impl SolveConfig {
    pub fn new(style: StyleSpec, mode: Mode, length: usize) -> Result<Self> {
        if !(2..=MAX_LENGTH).contains(&length) {
            return Err(Error::InvalidPiece(format!(
                "length {length} outside 2..={MAX_LENGTH}"
            )));
        }
        Ok(SolveConfig {
            style,
            mode,
            length,
            rule_config: RuleConfig::default(),
            seed: DEFAULT_SEED,
            node_budget: Some(DEFAULT_NODE_BUDGET),
            rhythm: None,
        })
    }

    /// A configuration matching a partial piece's declarations.
    pub fn for_partial(partial: &PartialPiece) -> Result<Self> {
        SolveConfig::new(partial.style.clone(), partial.mode, partial.length)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_rules(mut self, rules: RuleConfig) -> Self {
        self.rule_config = rules;
        self
    }

    /// Compose for `tree`: the checked extreme notes of every part must fall
    /// on its slowest leaves.
    pub fn with_rhythm(mut self, tree: &PartitionTree, extremes: ExtremeNotes) -> Result<Self> {
        if tree.leaf_count() != self.length {
            return Err(Error::LeafCount {
                leaves: tree.leaf_count(),
                length: self.length,
            });
        }
        let slow = tree.beat_info().iter().map(|i| i.duration_class == 1).collect();
        self.rhythm = Some(RhythmConstraint { slow, extremes });
        Ok(self)
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Result<Self> {
        if budget == Some(0) {
            return Err(Error::InvalidPiece("node budget must be positive".into()));
        }
        self.node_budget = budget;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(Piece),
    Unsatisfiable,
    BudgetExhausted,
}

impl SolveOutcome {
    pub fn piece(&self) -> Option<&Piece> {
        match self {
            SolveOutcome::Solved(p) => Some(p),
            _ => None,
        }
    }
}

/// Compose a fresh piece.
pub fn compose(cfg: &SolveConfig) -> SolveOutcome {
    first(Search::new(cfg, None))
}

/// Complete a partial piece; pinned cells are never changed.
pub fn complete(partial: &PartialPiece, cfg: &SolveConfig) -> Result<SolveOutcome> {
    Ok(first(Search::new(cfg, Some(checked_pins(partial, cfg)?))))
}

/// Up to `limit` distinct valid pieces, in search order. The first one is
/// what [`compose`] returns.
pub fn enumerate(cfg: &SolveConfig, limit: usize) -> Vec<Piece> {
    collect(Search::new(cfg, None), limit).0
}

/// Like [`enumerate`], with the partial piece's cells pinned.
pub fn enumerate_completions(
    partial: &PartialPiece,
    cfg: &SolveConfig,
    limit: usize,
) -> Result<Vec<Piece>> {
    Ok(collect(Search::new(cfg, Some(checked_pins(partial, cfg)?)), limit).0)
}

/// Like [`enumerate`], but also reports whether the node budget cut the
/// search short.
pub fn enumerate_bounded(cfg: &SolveConfig, limit: usize) -> (Vec<Piece>, bool) {
    collect(Search::new(cfg, None), limit)
}

fn checked_pins<'p>(partial: &'p PartialPiece, cfg: &SolveConfig) -> Result<&'p PartialPiece> {
    if partial.style.name != cfg.style.name
        || partial.style.part_count != cfg.style.part_count
        || partial.mode != cfg.mode
        || partial.length != cfg.length
    {
        return Err(Error::InvalidPiece(
            "partial piece does not match the solve configuration".into(),
        ));
    }
    for (&(part, time), event) in &partial.cells {
        if let Some(n) = event.note() {
            let range = cfg.style.part_range(part);
            if !range.contains(n) {
                return Err(Error::PinOutOfRange {
                    part,
                    time,
                    note: n.value(),
                    lo: range.lo.value(),
                    hi: range.hi.value(),
                });
            }
        }
    }
    Ok(partial)
}

fn first(mut search: Search<'_>) -> SolveOutcome {
    let mut found = None;
    match search.run(&mut |p| {
        found = Some(p);
        false
    }) {
        Flow::Budget => SolveOutcome::BudgetExhausted,
        _ => found.map_or(SolveOutcome::Unsatisfiable, SolveOutcome::Solved),
    }
}

fn collect(mut search: Search<'_>, limit: usize) -> (Vec<Piece>, bool) {
    let mut out = Vec::new();
    if limit == 0 {
        return (out, false);
    }
    let flow = search.run(&mut |p| {
        out.push(p);
        out.len() < limit
    });
    (out, flow == Flow::Budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::diagnose;
    use crate::score::{parse_facts, Event, PartRange, StartPolicy, Style};
    use crate::pitch::NoteIndex;

    fn solo_cfg(length: usize) -> SolveConfig {
        SolveConfig::new(Style::Solo.spec(), Mode::Major, length).unwrap()
    }

    #[test]
    fn solo_composition_is_clean() {
        let cfg = solo_cfg(16);
        let piece = compose(&cfg).piece().cloned().expect("solved");
        assert_eq!(diagnose(&piece, &cfg.rule_config), vec![]);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let cfg = solo_cfg(12).with_seed(17);
        assert_eq!(compose(&cfg), compose(&cfg));
    }

    #[test]
    fn single_note_range_is_unsatisfiable() {
        let style = Style::Solo
            .spec()
            .with_part_range(1, PartRange::new(25, 25).unwrap())
            .with_start_policy(StartPolicy::ExactNotes(vec![NoteIndex::new(25).unwrap()]));
        let cfg = SolveConfig::new(style, Mode::Major, 2).unwrap();
        assert_eq!(compose(&cfg), SolveOutcome::Unsatisfiable);
    }

    #[test]
    fn two_step_completions() {
        let cfg = solo_cfg(2);
        let mut partial = PartialPiece::new(cfg.style.clone(), Mode::Major, 2).unwrap();
        partial
            .pin(1, 1, Event::Note(NoteIndex::new(25).unwrap()))
            .unwrap();
        let mut got: Vec<Vec<u8>> = enumerate_completions(&partial, &cfg, 10)
            .unwrap()
            .iter()
            .map(|p| p.part(1).iter().map(|e| e.note().unwrap().value()).collect())
            .collect();
        got.sort();
        assert_eq!(got, vec![vec![25, 13], vec![25, 37]]);
    }

    #[test]
    fn pinned_repeat_is_unsatisfiable() {
        let cfg = solo_cfg(2);
        let mut partial = PartialPiece::new(cfg.style.clone(), Mode::Major, 2).unwrap();
        let n = Event::Note(NoteIndex::new(25).unwrap());
        partial.pin(1, 1, n).unwrap();
        partial.pin(1, 2, n).unwrap();
        assert_eq!(complete(&partial, &cfg).unwrap(), SolveOutcome::Unsatisfiable);
    }

    #[test]
    fn pin_outside_range_is_an_input_error() {
        let cfg = solo_cfg(4);
        let mut partial = PartialPiece::new(cfg.style.clone(), Mode::Major, 4).unwrap();
        partial
            .pin(1, 2, Event::Note(NoteIndex::new(60).unwrap()))
            .unwrap();
        assert!(matches!(
            complete(&partial, &cfg),
            Err(Error::PinOutOfRange { note: 60, .. })
        ));
    }

    #[test]
    fn completes_the_lydian_musing() {
        let partial = parse_facts(include_str!("../../tests/data/musing.lp")).unwrap();
        let cfg = SolveConfig::for_partial(&partial).unwrap();
        let piece = complete(&partial, &cfg).unwrap().piece().cloned().expect("solved");
        for (&(part, time), e) in &partial.cells {
            assert_eq!(piece.event(part, time), *e);
        }
        assert_eq!(diagnose(&piece, &cfg.rule_config), vec![]);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let cfg = SolveConfig::new(Style::Quartet.spec(), Mode::Major, 16)
            .unwrap()
            .with_budget(Some(3))
            .unwrap();
        assert_eq!(compose(&cfg), SolveOutcome::BudgetExhausted);
    }

    #[test]
    fn rhythm_keeps_extreme_notes_slow() {
        let tree = PartitionTree::from_sexpr("(((X X) (X X)) ((X (X X X)) ((X X) (X X))))").unwrap();
        let cases = (0..20)
            .map(|seed| (seed, ExtremeNotes::Lowest))
            .chain([(1, ExtremeNotes::LowestAndHighest)]);
        for (seed, extremes) in cases {
            let cfg = SolveConfig::new(Style::Duet.spec(), Mode::Lydian, 12)
                .unwrap()
                .with_seed(seed)
                .with_rhythm(&tree, extremes)
                .unwrap();
            let piece = compose(&cfg).piece().cloned().expect("solved");
            assert!(crate::rhythm::attach_rhythm_with(&piece, &tree, extremes).is_ok());
            assert_eq!(diagnose(&piece, &cfg.rule_config), vec![]);
        }
    }

    #[test]
    fn limit_one_agrees_with_compose() {
        for style in Style::ALL {
            let cfg = SolveConfig::new(style.spec(), Mode::Dorian, 6).unwrap();
            let listed = enumerate(&cfg, 1);
            assert_eq!(listed.first(), compose(&cfg).piece());
        }
    }

    #[test]
    fn rules_switched_off_allow_anything() {
        let cfg = solo_cfg(3).with_rules(RuleConfig::none());
        let all = enumerate(&cfg, usize::MAX);
        // every note of the lattice, or a rest, at every step
        let width = 68 + 1;
        assert_eq!(all.len(), width * width * width);
    }
}
