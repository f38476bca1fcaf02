//! The `cantus` command line.
//!
//! Exit codes: 0 success, 2 no piece (or no rhythm tree) exists,
//! 3 bad input, 4 search budget exhausted.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::error::Error;
use crate::pitch::Mode;
use crate::render::{
    render_engraver, render_engraver_timed, render_events, render_human, render_human_timed,
    render_piece_events, Fundamental,
};
use crate::rhythm::{
    attach_rhythm_with, enumerate_trees, extreme_note_violations, AttachError, ExtremeNotes,
    LayerCaps, PartitionTree, TimedPiece,
};
use crate::rules::{diagnose, format_records, RuleConfig, DEFAULT_REPEAT_WINDOW};
use crate::score::{emit_facts, parse_facts, PartialPiece, Piece, Style};
use crate::solver::{
    complete, compose, enumerate_bounded, enumerate_completions, SolveConfig, SolveOutcome,
    SplitMix64, DEFAULT_NODE_BUDGET, DEFAULT_SEED,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSATISFIABLE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Compose,
    #[value(alias = "diagnosis")]
    Diagnose,
    Complete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Human,
    Facts,
    Events,
    Engraver,
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Extremes {
    Lowest,
    Both,
    Off,
}

impl From<Extremes> for ExtremeNotes {
    fn from(e: Extremes) -> Self {
        match e {
            Extremes::Lowest => ExtremeNotes::Lowest,
            Extremes::Both => ExtremeNotes::LowestAndHighest,
            Extremes::Off => ExtremeNotes::Off,
        }
    }
}

/// Compose, complete or diagnose first-species counterpoint.
#[derive(Debug, Parser)]
#[command(name = "cantus", version)]
pub struct Args {
    #[arg(long, value_enum)]
    pub task: Task,
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    /// Number of time steps.
    #[arg(long)]
    pub time: Option<usize>,
    #[arg(long, value_parser = parse_style)]
    pub style: Option<Style>,
    /// Set the piece to a partition tree picked by the seed.
    #[arg(long)]
    pub rhythm: bool,
    /// Partition tree file (s-expression); implies --rhythm.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    /// Fact file holding a complete or partial piece.
    #[arg(long)]
    pub piece: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value = "c", value_parser = parse_fundamental)]
    pub fundamental: Fundamental,
    #[arg(long, value_enum, default_value = "human")]
    pub output: Output,
    /// Number of pieces to print.
    #[arg(long, default_value_t = 1)]
    pub limit: usize,
    /// Window for the repeated-notes and repeated-pattern rules.
    #[arg(long, default_value_t = DEFAULT_REPEAT_WINDOW)]
    pub rw: usize,
    /// Search budget in attempted cell assignments; 0 means unbounded.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Length of the whole piece in seconds for event output; one second
    /// per step by default.
    #[arg(long)]
    pub duration: Option<f64>,
    /// Extreme notes that must fall on the slowest leaves.
    #[arg(long, value_enum, default_value = "lowest")]
    pub extremes: Extremes,
    /// Layer caps for tree enumeration, as MEASURE,BEAT,DURATION.
    #[arg(long, default_value = "2,2,2", value_parser = parse_caps)]
    pub caps: LayerCaps,
}

fn parse_mode(s: &str) -> Result<Mode, Error> {
    s.parse()
}

fn parse_style(s: &str) -> Result<Style, Error> {
    s.parse()
}

fn parse_fundamental(s: &str) -> Result<Fundamental, Error> {
    s.parse()
}

fn parse_caps(s: &str) -> Result<LayerCaps, String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [m, b, d] if m >= 1 && b >= 1 && d >= 1 => Ok(LayerCaps::new(m, b, d)),
        _ => Err("expected three positive integers".into()),
    }
}

/// A failed run: exit code and message.
#[derive(Debug)]
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure(EXIT_INPUT, msg.into())
}

/// Run the command line on `argv` (program name first), printing to the
/// process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(argv, &mut out, &mut err)
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&args) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "cantus: {msg}");
            code
        }
    }
}

fn execute(args: &Args) -> Result<String, Failure> {
    if args.limit == 0 {
        return Err(input("--limit must be at least 1"));
    }
    let rules = RuleConfig::default().with_repeat_window(args.rw)?;
    match args.task {
        Task::Diagnose => diagnose_task(args, &rules),
        Task::Compose if args.piece.is_none() => {
            let mode = args.mode.ok_or_else(|| input("compose needs --mode"))?;
            let time = args.time.ok_or_else(|| input("compose needs --time"))?;
            let style = args.style.unwrap_or(Style::Solo);
            let cfg = SolveConfig::new(style.spec(), mode, time)?;
            solve_task(args, cfg.with_rules(rules), None)
        }
        Task::Compose | Task::Complete => {
            let partial = read_piece(args)?;
            if args.mode.is_some_and(|m| m != partial.mode)
                || args.time.is_some_and(|t| t != partial.length)
                || args.style.is_some_and(|s| s != partial.style.name)
            {
                return Err(input("--mode, --time or --style disagrees with the piece file"));
            }
            let cfg = SolveConfig::for_partial(&partial)?;
            solve_task(args, cfg.with_rules(rules), Some(&partial))
        }
    }
}

fn read_piece(args: &Args) -> Result<PartialPiece, Failure> {
    let path = args.piece.as_ref().ok_or_else(|| input("this task needs --piece"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_facts(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_tree(args: &Args) -> Result<Option<PartitionTree>, Failure> {
    let Some(path) = &args.tree else { return Ok(None) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(Some(PartitionTree::from_sexpr(text.trim())?))
}

fn diagnose_task(args: &Args, rules: &RuleConfig) -> Result<String, Failure> {
    let piece = read_piece(args)?.to_piece()?;
    let mut records = diagnose(&piece, rules);
    if let Some(tree) = read_tree(args)? {
        if tree.leaf_count() != piece.length() {
            return Err(Error::LeafCount {
                leaves: tree.leaf_count(),
                length: piece.length(),
            }
            .into());
        }
        let classes: Vec<usize> = tree.beat_info().iter().map(|i| i.duration_class).collect();
        records.extend(extreme_note_violations(&piece, &classes, args.extremes.into()));
        records.sort();
        records.dedup();
    }
    Ok(format_records(&records))
}

/// The tree at a seeded position of the enumeration for `length` leaves.
pub fn choose_tree(length: usize, caps: LayerCaps, seed: u64) -> Option<PartitionTree> {
    let mut trees = enumerate_trees(length, caps);
    let total = trees.total();
    if total == 0 {
        return None;
    }
    let mut rng = SplitMix64::new(seed);
    let wide = (u128::from(rng.next_u64()) << 64) | u128::from(rng.next_u64());
    trees.get(wide % total)
}

fn solve_task(
    args: &Args,
    cfg: SolveConfig,
    partial: Option<&PartialPiece>,
) -> Result<String, Failure> {
    let budget = (args.budget > 0).then_some(args.budget);
    let mut cfg = cfg.with_seed(args.seed).with_budget(budget)?;
    let extremes: ExtremeNotes = args.extremes.into();
    let tree = match read_tree(args)? {
        Some(t) => Some(t),
        None if args.rhythm => Some(choose_tree(cfg.length, args.caps, args.seed).ok_or_else(|| {
            Failure(
                EXIT_UNSATISFIABLE,
                format!("no partition tree with {} leaves fits the layer caps", cfg.length),
            )
        })?),
        None => None,
    };
    if let Some(t) = &tree {
        cfg = cfg.with_rhythm(t, extremes)?;
    }
    if args.output == Output::Tree && tree.is_none() {
        return Err(input("--output=tree needs --rhythm or --tree"));
    }

    let (pieces, exhausted) = if args.limit == 1 {
        let outcome = match partial {
            Some(p) => complete(p, &cfg)?,
            None => compose(&cfg),
        };
        match outcome {
            SolveOutcome::Solved(p) => (vec![p], false),
            SolveOutcome::Unsatisfiable => (vec![], false),
            SolveOutcome::BudgetExhausted => (vec![], true),
        }
    } else {
        match partial {
            Some(p) => (enumerate_completions(p, &cfg, args.limit)?, false),
            None => enumerate_bounded(&cfg, args.limit),
        }
    };
    if pieces.is_empty() {
        return Err(if exhausted {
            Failure(EXIT_BUDGET, "search budget exhausted before a piece was found".into())
        } else {
            Failure(EXIT_UNSATISFIABLE, "no piece satisfies the rules".into())
        });
    }

    let mut text = String::new();
    let many = pieces.len() > 1;
    for (k, piece) in pieces.iter().enumerate() {
        if many {
            let _ = writeln!(text, "% piece {}", k + 1);
        }
        let timed = match &tree {
            Some(t) => Some(attach_rhythm_with(piece, t, extremes).map_err(|e| match e {
                AttachError::Structure(e) => Failure::from(e),
                AttachError::Violations(v) => Failure(
                    EXIT_UNSATISFIABLE,
                    format!("rhythm rejected the piece:\n{}", format_records(&v)),
                ),
            })?),
            None => None,
        };
        text.push_str(&render(args, piece, timed.as_ref()));
    }
    Ok(text)
}

fn render(args: &Args, piece: &Piece, timed: Option<&TimedPiece>) -> String {
    let f = args.fundamental;
    let seconds = args.duration.unwrap_or(piece.length() as f64);
    match (args.output, timed) {
        (Output::Human, Some(tp)) => render_human_timed(tp, f),
        (Output::Human, None) => render_human(piece, f),
        (Output::Facts, _) => emit_facts(piece),
        (Output::Events, Some(tp)) => render_events(tp, f, seconds),
        (Output::Events, None) => render_piece_events(piece, f, seconds),
        (Output::Engraver, Some(tp)) => render_engraver_timed(tp, f),
        (Output::Engraver, None) => render_engraver(piece, f),
        (Output::Tree, Some(tp)) => format!("{}\n", tp.tree().to_sexpr()),
        (Output::Tree, None) => unreachable!("checked before solving"),
    }
}
