//! File formats, JSON reports and the command-line front end for
//! `hypercolor-core`.

pub mod commands;
pub mod formats;
pub mod parallel;
pub mod report;
