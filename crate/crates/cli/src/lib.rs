//! Command-line front end: knowledge-base files, exact number parsing,
//! command dispatch and reports.

pub mod cli;
pub mod kbfile;
pub mod number;
pub mod report;
pub mod run;
