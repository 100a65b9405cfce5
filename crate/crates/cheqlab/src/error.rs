use std::path::PathBuf;

use thiserror::Error;

use crate::document::DocumentError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Document {
        path: PathBuf,
        source: DocumentError,
    },
    #[error(transparent)]
    Core(#[from] cheqlab_core::Error),
}

impl CliError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            CliError::Core(
                cheqlab_core::Error::SearchBudget { .. } | cheqlab_core::Error::SizeGuard { .. }
            )
        )
    }

    /// 3 for an exhausted budget, 2 for everything else that stops a command
    /// before it can decide anything.
    pub fn exit_code(&self) -> u8 {
        if self.is_budget() {
            3
        } else {
            2
        }
    }
}
