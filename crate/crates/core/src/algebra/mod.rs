//! Graded noncommutative polynomials and the normal-ordering engine.

mod poly;
mod preset;
mod probe;
mod word;

pub use poly::NCPoly;
pub use preset::{Generator, Preset, PresetBuilder, Rule, SideRelation, Signature, Strategy, DEFAULT_GUARD};
pub(crate) use preset::invert_monomial;
pub use probe::{confluence_probe, random_poly, random_word, Ambiguity};
pub use word::{GenId, Word};
