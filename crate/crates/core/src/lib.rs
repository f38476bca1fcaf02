//! First-species counterpoint by rule: diagnose pieces, compose and complete
//! them with a seeded search, and set them to rhythms built from binary and
//! ternary subdivisions.
//!
//! ```
//! use cantus::pitch::Mode;
//! use cantus::rules::{diagnose, RuleConfig};
//! use cantus::score::Style;
//! use cantus::solver::{compose, SolveConfig};
//!
//! let cfg = SolveConfig::new(Style::Duet.spec(), Mode::Lydian, 12).unwrap();
//! let piece = compose(&cfg).piece().cloned().unwrap();
//! assert_eq!(diagnose(&piece, &RuleConfig::default()), vec![]);
//! ```

pub mod cli;
pub mod error;
pub mod pitch;
pub mod render;
pub mod rhythm;
pub mod rules;
pub mod score;
pub mod solver;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/pitch.md")]
    pub mod pitch {}
    #[doc = include_str!("../../../book/src/pieces.md")]
    pub mod pieces {}
    #[doc = include_str!("../../../book/src/rules.md")]
    pub mod rules {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/rhythm.md")]
    pub mod rhythm {}
    #[doc = include_str!("../../../book/src/output.md")]
    pub mod output {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
