use std::path::PathBuf;

/// Errors from file handling and runs. All of them are data errors (exit
/// status 1); usage errors are reported by the argument parser.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{source_name}:{line}: {message}")]
    Parse { source_name: String, line: usize, message: String },
    #[error(transparent)]
    Core(#[from] gaussint_core::Error),
    #[error("{0}")]
    Config(String),
    #[error("malformed binary ERI data: {0}")]
    Binary(String),
}

impl Error {
    pub(crate) fn parse(source_name: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse { source_name: source_name.to_string(), line, message: message.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
