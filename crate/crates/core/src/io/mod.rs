//! File formats and the command-line driver.

pub mod commands;
pub mod problem;
pub mod report;

pub use commands::run;
pub use problem::{load_problem, parse_problem, Problem, ProblemFile};
pub use report::{write_report, ReportFile};
