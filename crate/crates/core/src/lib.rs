//! Virtual knots and links as signed Gauss codes: Reidemeister moves, Carter
//! surfaces, Alexander-type invariants, and concordance movies.

pub mod algebra;
pub mod cobordism;
pub mod constructions;
pub mod invariants;
pub mod kernel;
pub mod moves;
pub mod shell;
pub mod surface;

pub use kernel::{parse, serialize, Code, CodeError, KnotCode, LinkCode, Passage, Sign, Token};
