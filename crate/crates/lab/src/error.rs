use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Usage(String),
    /// Schema or parse failure; `field` is the path inside the document.
    #[error("{file}: {field}: {message}")]
    Config { file: String, field: String, message: String },
    #[error("rule violates the standing assumptions: {0}")]
    InvalidRule(String),
    #[error(transparent)]
    Core(#[from] polygrowth::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;

impl LabError {
    /// 0 success, 1 domain error, 2 usage or configuration error.
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::InvalidRule(_) => 1,
            LabError::Core(polygrowth::Error::InvalidInput(_)) => 2,
            LabError::Core(_) => 1,
            _ => 2,
        }
    }

    pub fn config(file: impl Into<String>, field: impl Into<String>, message: impl Into<String>) -> Self {
        LabError::Config { file: file.into(), field: field.into(), message: message.into() }
    }
}

pub(crate) trait IoContext<T> {
    fn at(self, path: impl Into<PathBuf>) -> Result<T>;
}

impl<T> IoContext<T> for io::Result<T> {
    fn at(self, path: impl Into<PathBuf>) -> Result<T> {
        self.map_err(|source| LabError::Io { path: path.into(), source })
    }
}
