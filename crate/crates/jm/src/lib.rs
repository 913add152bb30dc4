//! Command-line front end for `jm-core`: model specification parsing, JSON
//! matrix formats and report rendering.

pub mod cli;
pub mod io;
pub mod report;
pub mod spec;

pub use cli::{run, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input: exit code 2.
    #[error("{0}")]
    Parse(String),
    /// A consistency check inside the library failed: exit code 3.
    #[error("internal error: {0}")]
    Internal(String),
    /// Results disagree with the expected reference values: exit code 4.
    #[error("{0}")]
    Mismatch(String),
    /// The subspace is not closed under the group action: exit code 5.
    #[error("not a module: generator {generator} moves basis element {basis_index} out of the span")]
    NotModule { generator: String, basis_index: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::NotModule { .. } => 5,
        }
    }
}

impl From<jm_core::Error> for CliError {
    fn from(e: jm_core::Error) -> Self {
        match e {
            jm_core::Error::Internal(msg) => CliError::Internal(msg),
            jm_core::Error::NotModule { generator, basis_index } => CliError::NotModule { generator, basis_index },
            other => CliError::Parse(other.to_string()),
        }
    }
}
