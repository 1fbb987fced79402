//! Job files, flag parsing, task dispatch and reports for the `kbundle`
//! command-line tool.

pub mod cli;
pub mod job;
pub mod report;
pub mod run;

pub use report::Report;
