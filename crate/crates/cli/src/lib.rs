//! Batch front-end for `dorth`: JSON configurations in, JSON reports and an
//! exit code out.

pub mod config;
pub mod run;

pub use config::{ConfigError, Mode, RawConfig, RunConfig, Suite};
pub use run::{cmd_run, cmd_sweep, ExitKind, Report};
