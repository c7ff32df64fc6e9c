//! Set-theoretic tetrahedron maps: the reduced electric solution, partial
//! transposes, words on `X^N` and their exhaustive verification.

mod colorset;
mod format;
pub mod identities;
mod map;
pub mod rewrite;
mod word;

pub use colorset::{closure_report, ClosureReport, ColorSet, ColorSetKind};
pub(crate) use format::{content_lines, parse_color};
pub use map::{dirs_label, TeCounterexample, TeReport, TetraMap, TransposeFamily};
pub use word::{
    verify_monomial_word, verify_monomial_word_with, verify_word, verify_word_with, Factor,
    MonomialFamily, SlotMap, WordCounterexample, WordReport, WordSide,
};
