//! Finitely presented groups: words, the presentation text format, and
//! Todd-Coxeter coset enumeration into permutation groups.

mod coset;
mod presentation;
mod word;

pub use coset::{
    enumerate_cosets, regular_representation, CosetTable, EnumerationError, TableStatus,
};
pub use presentation::{parse_presentation, ParseError, Presentation};
pub use word::{Letter, Word};

/// Default coset bound when the caller has no expected order.
pub const DEFAULT_MAX_COSETS: usize = 2_000_000;
