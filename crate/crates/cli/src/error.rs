use std::path::PathBuf;
use thiserror::Error;

/// Errors the command-line layer can hit before or while producing output.
/// All of them map to exit code 2 (bad input); verification failures are
/// reported through [`crate::verify::VerifyOutcome`] and exit code 1, not
/// through this type.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] orthotime::Error),

    #[error("cannot parse {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },

    #[error("{context}")]
    Format { context: String },
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        context: format!("reading {}", path.display()),
        source,
    })
}

pub(crate) fn write_file(path: &std::path::Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}
