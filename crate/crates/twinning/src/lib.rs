//! File formats, reports and the command line around `twinning-core`.

pub mod cli;
pub mod format;
pub mod report;
pub mod twin;

pub use cli::run;
pub use format::{BuildingBundle, FormatError};
pub use report::Report;
