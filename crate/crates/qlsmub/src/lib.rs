//! File formats, parallel drivers and the command-line front end for
//! `qlsmub-core`.

pub mod cli;
pub mod format;
pub mod parallel;

pub use format::{Document, FormatError, FORMAT};
