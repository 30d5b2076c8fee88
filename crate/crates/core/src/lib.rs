//! Change statistics for aggregated journal-journal citation networks.
//!
//! Two yearly snapshots of a cited × citing count matrix are compared with
//! probabilistic-entropy (expected information) measures. The crate covers
//! the full analysis chain:
//!
//! - [`ingest`]: parsing edge lists, applying journal name changes, aligning
//!   two years, filtering single-citation relations, marginals and summary
//!   statistics;
//! - [`entropy`]: expected information `I = Σ q·log2(q/p)` over aligned
//!   frequency distributions, its frequency-space decomposition, support
//!   rules for appearing/disappearing citers, and channel normalizations;
//! - [`rankings`]: file-level ΔI contributions, per-journal vector change,
//!   normalized orderings, and raw matrix-level terms;
//! - [`categories`]: aggregation of per-journal change into macro-journals
//!   and Spearman rank correlation;
//! - [`environment`]: seed-journal citation environments, correlation
//!   matrices, eigenvalue factor analysis with varimax rotation, and 2-D
//!   multidimensional scaling;
//! - [`synth`]: deterministic synthetic two-year networks with ground truth,
//!   plus an independent brute-force information oracle for testing.
//!
//! The crate is `no_std` (with `alloc`); all floating-point math goes
//! through `libm`. File IO, serialization to disk, and the command-line
//! surface live in the companion `citent-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod categories;
pub mod entropy;
pub mod environment;
pub mod ingest;
mod math;
pub mod rankings;
pub mod reference;
pub mod synth;

pub use ingest::{AlignedPair, CitationSnapshot, JournalId, NameChangeRecord, SummaryStats};
pub use rankings::{Axis, ChangeReport};
