//! File formats, seeded corpora, verification suites, report and table
//! export on top of `qcanon-core`.

pub mod corpus;
pub mod export;
pub mod format;
pub mod run;
pub mod suites;

pub use qcanon_core;
