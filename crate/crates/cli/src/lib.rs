//! Command-line front end for `tatecoh`: file formats, reports and commands.

pub mod app;
pub mod format;
pub mod report;
