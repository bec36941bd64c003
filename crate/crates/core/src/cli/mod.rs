//! Command-line plumbing: space files, operation dispatch, fixture and
//! property suites, and deterministic reports.

pub mod args;
pub mod fixtures;
pub mod properties;
pub mod report;
pub mod run;
pub mod spec_file;

use thiserror::Error;

use crate::exact::ExactError;
use crate::fdspace::FdError;
use crate::funcspace::FuncError;

pub use fixtures::{fixtures, FixtureResult};
pub use properties::{properties, PropertyConfig, PropertyReport};
pub use report::{Outcome, Report};
pub use run::{run_fd, run_func, FD_OPS, FUNC_OPS};
pub use spec_file::SpaceSpecFile;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Field(String),
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("bad argument: {0}")]
    Arg(String),
    #[error(transparent)]
    Fd(#[from] FdError),
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}
