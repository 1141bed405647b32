//! Combinatorics of finitely presented ordinal graphs.
//!
//! The crate bundles:
//! - exact Cantor-normal-form ordinal arithmetic below ε₀ ([`ordinal`]),
//! - a small DSL for finite presentations of ordinal graphs ([`presentation`]),
//! - the path calculus of the generated category: composition, unique
//!   factorization splits, decidable equality ([`path`]),
//! - the reduced word calculus on generators ([`starword`]),
//! - per-vertex regularity analysis and exhaustive-set algorithms
//!   ([`regularity`]),
//! - quotient digraphs, cycle/entry analysis and non-returning path
//!   construction ([`quotient`]),
//! - uniqueness and simplicity verdicts ([`verdict`]), and
//! - a JSON analysis report ([`report`]).

pub mod ordinal;
pub mod presentation;
pub mod path;
pub mod starword;
pub mod regularity;
pub mod quotient;
pub mod verdict;
pub mod report;

pub use ordinal::{parse_ordinal, Ordinal};
pub use path::{Block, Extension, Path};
pub use presentation::{builtin, parse_presentation, GenId, Presentation, VertexId};

/// Crate version, exposed for report stamping.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
