//! Scenario runner and report emitter behind the `spin7` binary.

pub mod report;
pub mod reproduce;
pub mod run;
pub mod scenario;

use thiserror::Error;

pub use report::{emit, Format, Report};
pub use run::run;
pub use scenario::{load_scenario, Scenario};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("scenario parse error: {0}")]
    Parse(String),
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 1,
            CliError::Inconsistency(_) => 2,
        }
    }
}

macro_rules! inconsistency_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Inconsistency(e.to_string())
            }
        }
    )*};
}

inconsistency_from!(
    spin7_core::wps::WpsError,
    spin7_core::series::SeriesError,
    spin7_core::chern::ChernError,
    spin7_core::cohomology::CohomologyError,
    spin7_core::pipeline::PipelineError
);
