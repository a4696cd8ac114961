//! Exact symbolic verification of q-deformed group calculi: rational-function
//! scalars, a normal-ordering engine for graded noncommutative polynomials,
//! matrix-level calculus, subgroup reductions and σ-model derivations.

pub mod algebra;
pub mod derivations;
pub mod error;
pub mod expr_io;
pub mod matrix;
pub mod presets;
pub mod reductions;
pub mod report;
pub mod rtensor;
pub mod runner;
pub mod scalars;
pub mod series;
pub mod sigma;

pub use algebra::{GenId, NCPoly, Preset, Word};
pub use error::{AlgebraError, LoadError, ParseError, ScalarError};
pub use scalars::QScalar;
