//! File formats, JSON reports and the job runner behind the `mixdiv` binary.

pub mod error;
pub mod io;
pub mod job;
pub mod report;
pub mod spec;

pub use error::CliError;
pub use io::{load_input, LoadedInput, PairInput};
pub use job::{execute, run_job, Command, JobOutcome, JobSpec, EXIT_ERROR, EXIT_OK, EXIT_VIOLATION};
pub use report::Num;
