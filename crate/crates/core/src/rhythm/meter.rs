use std::fmt::Write as _;

use num_integer::Integer;

use crate::error::{Error, Result};

use super::tree::PartitionTree;
use super::Fraction;

/// A meter of `beats` beats per measure, each split into `division` parts,
/// spanning `measures` measures. `3 x 2` is three beats of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeterSignature {
    pub beats: u64,
    pub division: u64,
    pub measures: u64,
}

impl MeterSignature {
    pub fn new(beats: u64, division: u64, measures: u64) -> Result<Self> {
        if ![2, 3].contains(&beats) || ![2, 3].contains(&division) {
            return Err(Error::InvalidTree(format!(
                "meter {beats} x {division}: both factors must be 2 or 3"
            )));
        }
        if measures == 0 {
            return Err(Error::InvalidTree("a meter needs at least one measure".into()));
        }
        Ok(MeterSignature {
            beats,
            division,
            measures,
        })
    }

    /// Subdivisions per measure.
    pub fn period(self) -> u64 {
        self.beats * self.division
    }
}

/// Onsets of a meter grouped by metrical level: measures, beats, then the
/// subdivisions of beats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricalLevels {
    pub levels: [Vec<Fraction>; 3],
}

impl MetricalLevels {
    pub const NAMES: [&'static str; 3] = ["I", "II", "III"];
}

/// Level denominators are `m`, `m a` and `m a b`. Each level holds every
/// fraction whose denominator divides its own but not the previous level's,
/// with numerators running over the residues coprime to the denominator.
pub fn metrical_hierarchy(sig: MeterSignature) -> MetricalLevels {
    let tops = [
        sig.measures,
        sig.measures * sig.beats,
        sig.measures * sig.beats * sig.division,
    ];
    let level = |i: usize| -> Vec<Fraction> {
        let mut out: Vec<Fraction> = divisors(tops[i])
            .into_iter()
            .filter(|&d| i == 0 || !tops[i - 1].is_multiple_of(d))
            .flat_map(|d| {
                (0..d)
                    .filter(move |&n| n.gcd(&d) == 1)
                    .map(move |n| Fraction::new(n, d).expect("positive denominator"))
            })
            .collect();
        out.sort();
        out
    };
    MetricalLevels {
        levels: [level(0), level(1), level(2)],
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Text table with one column per grid position `k / N` and one row per
/// level, fractions placed in their column.
pub fn format_hierarchy(levels: &MetricalLevels) -> String {
    let grid = levels
        .levels
        .iter()
        .flatten()
        .fold(1u64, |acc, f| acc.lcm(&f.den()));
    let width = levels
        .levels
        .iter()
        .flatten()
        .map(|f| f.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for (name, level) in MetricalLevels::NAMES.iter().zip(&levels.levels) {
        let mut cells = vec![String::new(); grid as usize];
        for f in level {
            cells[(f.num() * (grid / f.den())) as usize] = f.to_string();
        }
        let _ = write!(out, "{name:<3}");
        for c in cells {
            let _ = write!(out, " {c:>width$}");
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out
}

/// Several voices in different meters, laid out until their downbeats meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyrhythmTable {
    /// Beats until every voice is back on a downbeat.
    pub hyper_meter: u64,
    /// Beats per measure of each voice.
    pub periods: Vec<u64>,
    /// `hyper_meter + 1` marks per voice, the last one closing the cycle.
    pub rows: Vec<String>,
}

/// Marks (`X`, `O`, `o`) of each voice over one hyper-meter, each voice
/// given as a (beats, division) pair.
///
/// ```
/// use cantus::rhythm::polyrhythm_table;
/// let table = polyrhythm_table(&[(2, 2)]).unwrap();
/// assert_eq!(table.hyper_meter, 4);
/// assert_eq!(table.rows[0], "X o O o X");
/// ```
pub fn polyrhythm_table(voices: &[(u64, u64)]) -> Result<PolyrhythmTable> {
    if voices.is_empty() {
        return Err(Error::InvalidTree("a polyrhythm needs at least one voice".into()));
    }
    let mut periods = Vec::new();
    let mut patterns = Vec::new();
    for &(beats, division) in voices {
        let sig = MeterSignature::new(beats, division, 1)?;
        let tree = PartitionTree::uniform(&[], &[beats], &[division])?;
        patterns.push(tree.beat_info().iter().map(|i| i.strength.mark()).collect::<Vec<_>>());
        periods.push(sig.period());
    }
    let hyper_meter = periods.iter().fold(1, |acc: u64, p| acc.lcm(p));
    let rows = patterns
        .iter()
        .map(|pattern| {
            (0..=hyper_meter as usize)
                .map(|i| pattern[i % pattern.len()].to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    Ok(PolyrhythmTable {
        hyper_meter,
        periods,
        rows,
    })
}

/// One line per voice, `label marks`.
pub fn format_polyrhythm(table: &PolyrhythmTable, labels: &[&str]) -> String {
    let width = labels.iter().map(|l| l.len()).max().unwrap_or(0);
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let label = labels.get(i).map_or_else(|| (i + 1).to_string(), |l| l.to_string());
            format!("{label:<width$} {row}\n")
        })
        .collect()
}
