//! Reading and writing fact files.
//!
//! A fact file is a list of ground facts, one per line, each terminated by a
//! period:
//!
//! ```text
//! keyMode(lydian).
//! chosenNote(1,1,25).
//! rest(1,2).
//! #const t=16.
//! style(solo).
//! part(1).
//! ```
//!
//! `%` starts a comment. `mode(..)` and `keyMode(..)` are synonyms. Parts may
//! be declared as `part(k)` or `part(lo..hi)`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pitch::{Mode, NoteIndex};

use super::piece::{check_length, Event, PartialPiece, Piece};
use super::style::{style_spec, Style};

#[derive(Debug)]
enum Fact {
    Note { part: usize, time: usize, note: i64 },
    Rest { part: usize, time: usize },
    Mode(Mode),
    Style(Style),
    Parts(usize, usize),
    Length(usize),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_int(line: usize, s: &str) -> Result<i64> {
    s.parse::<i64>()
        .map_err(|_| parse_err(line, format!("expected an integer, found `{s}`")))
}

fn parse_index(line: usize, s: &str) -> Result<usize> {
    let v = parse_int(line, s)?;
    usize::try_from(v).map_err(|_| parse_err(line, format!("negative index `{s}`")))
}

fn parse_line(line: usize, text: &str) -> Result<Fact> {
    let Some(body) = text.strip_suffix('.') else {
        return Err(parse_err(line, "fact is not terminated by `.`"));
    };
    if let Some(rest) = body.strip_prefix("#const") {
        let compact: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
        return match compact.split_once('=') {
            Some(("t", value)) => Ok(Fact::Length(parse_index(line, value)?)),
            Some((name, _)) => Err(parse_err(line, format!("unknown constant `{name}`"))),
            None => Err(parse_err(line, "malformed #const directive")),
        };
    }
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let (name, args) = compact
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(|| parse_err(line, format!("malformed fact `{text}`")))?;
    let args: Vec<&str> = args.split(',').collect();
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(parse_err(
                line,
                format!("`{name}` takes {n} argument(s), found {}", args.len()),
            ))
        }
    };
    match name {
        "chosenNote" => {
            arity(3)?;
            Ok(Fact::Note {
                part: parse_index(line, args[0])?,
                time: parse_index(line, args[1])?,
                note: parse_int(line, args[2])?,
            })
        }
        "rest" => {
            arity(2)?;
            Ok(Fact::Rest {
                part: parse_index(line, args[0])?,
                time: parse_index(line, args[1])?,
            })
        }
        "keyMode" | "mode" => {
            arity(1)?;
            Ok(Fact::Mode(
                args[0].parse().map_err(|e: Error| parse_err(line, e.to_string()))?,
            ))
        }
        "style" => {
            arity(1)?;
            Ok(Fact::Style(
                args[0].parse().map_err(|e: Error| parse_err(line, e.to_string()))?,
            ))
        }
        "part" => {
            arity(1)?;
            match args[0].split_once("..") {
                Some((lo, hi)) => Ok(Fact::Parts(parse_index(line, lo)?, parse_index(line, hi)?)),
                None => {
                    let k = parse_index(line, args[0])?;
                    Ok(Fact::Parts(k, k))
                }
            }
        }
        other => Err(parse_err(line, format!("unknown fact `{other}`"))),
    }
}

fn set_once<T: PartialEq + Copy + std::fmt::Debug>(
    slot: &mut Option<T>,
    value: T,
    line: usize,
    what: &str,
) -> Result<()> {
    match slot {
        Some(old) if *old != value => Err(parse_err(
            line,
            format!("{what} declared twice ({old:?} and {value:?})"),
        )),
        _ => {
            *slot = Some(value);
            Ok(())
        }
    }
}

fn describe(e: Event) -> String {
    match e {
        Event::Note(n) => format!("note {n}"),
        Event::Rest => "a rest".into(),
    }
}

/// Parse a fact file into a partial piece.
pub fn parse_facts(text: &str) -> Result<PartialPiece> {
    let mut facts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('%').next().unwrap_or("").trim();
        if !content.is_empty() {
            facts.push((i + 1, parse_line(i + 1, content)?));
        }
    }

    let (mut mode, mut style, mut length) = (None, None, None);
    let mut declared_parts = BTreeSet::new();
    for (line, fact) in &facts {
        match *fact {
            Fact::Mode(m) => set_once(&mut mode, m, *line, "mode")?,
            Fact::Style(s) => set_once(&mut style, s, *line, "style")?,
            Fact::Length(t) => set_once(&mut length, t, *line, "t")?,
            Fact::Parts(lo, hi) => {
                if lo == 0 || lo > hi {
                    return Err(parse_err(*line, format!("bad part range {lo}..{hi}")));
                }
                declared_parts.extend(lo..=hi);
            }
            _ => {}
        }
    }
    let length = length.ok_or(Error::Missing("#const t"))?;
    let style = style.ok_or(Error::Missing("style"))?;
    let mode = mode.ok_or(Error::Missing("mode"))?;
    check_length(length)?;
    let spec = style_spec(style);
    if !declared_parts.is_empty() && declared_parts != spec.parts().collect() {
        return Err(Error::InvalidPiece(format!(
            "declared parts {declared_parts:?} do not match style {style} with {} part(s)",
            spec.part_count
        )));
    }

    let mut piece = PartialPiece::new(spec, mode, length)?;
    for (line, fact) in facts {
        let (part, time, event) = match fact {
            Fact::Note { part, time, note } => {
                let range = piece.style.note_range;
                let in_range = NoteIndex::new(note).ok().filter(|n| range.contains(*n));
                let Some(n) = in_range else {
                    return Err(Error::Range {
                        line,
                        note,
                        lo: range.lo.value(),
                        hi: range.hi.value(),
                    });
                };
                (part, time, Event::Note(n))
            }
            Fact::Rest { part, time } => (part, time, Event::Rest),
            _ => continue,
        };
        if let Some(previous) = piece.get(part, time) {
            if previous != event {
                return Err(Error::Conflict {
                    line,
                    part,
                    time,
                    first: describe(previous),
                    second: describe(event),
                });
            }
        }
        piece
            .pin(part, time, event)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(piece)
}

/// Serialize a partial piece. Fixed cells are listed in (part, time) order.
pub fn emit_partial(piece: &PartialPiece) -> String {
    let mut out = String::new();
    writeln!(out, "mode({}).", piece.mode).unwrap();
    for (&(part, time), event) in &piece.cells {
        match event {
            Event::Note(n) => writeln!(out, "chosenNote({part},{time},{n}).").unwrap(),
            Event::Rest => writeln!(out, "rest({part},{time}).").unwrap(),
        }
    }
    writeln!(out, "#const t={}.", piece.length).unwrap();
    writeln!(out, "style({}).", piece.style.name).unwrap();
    match piece.style.part_count {
        1 => writeln!(out, "part(1).").unwrap(),
        n => writeln!(out, "part(1..{n}).").unwrap(),
    }
    out
}

/// Serialize a complete piece; `parse_facts` reads it back unchanged.
pub fn emit_facts(piece: &Piece) -> String {
    emit_partial(&PartialPiece::from(piece))
}
