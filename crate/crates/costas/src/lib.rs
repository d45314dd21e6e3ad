//! Command line, file formats and parallel drivers on top of `costas-core`.

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;
pub mod suite;

pub use report::{Emit, RunReport};
