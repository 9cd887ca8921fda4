//! Batch front end for the critical-level Fock checks: JSON job configs in,
//! JSON reports out.

pub mod config;
pub mod error;
pub mod jobs;
pub mod report;

pub use config::{Command, JobConfig, SCHEMA_VERSION};
pub use error::{CliError, Result};
pub use jobs::run_job;
pub use report::{CheckRecord, JobReport};
