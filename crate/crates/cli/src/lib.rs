//! Job files, reports and the corpus runner behind the `rees` binary.

pub mod corpus;
pub mod error;
pub mod job;
pub mod run;

pub use corpus::{run_corpus, CorpusSummary, Outcome};
pub use error::{exit, CliError};
pub use job::{JobSpec, Mode, Overrides};
pub use run::{run_analyze, run_verify, write_atomic, Report};
