use hpref::HprefError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: HprefError,
    },

    #[error(transparent)]
    Core(#[from] HprefError),

    #[error("grid specification: {0}")]
    Grid(#[from] toml::de::Error),

    #[error("no partition reached {threshold} of {runs} runs (best: {best})")]
    Unstable {
        threshold: f64,
        runs: usize,
        best: usize,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 1 usage, 2 I/O or parse, 3 stability threshold not reached.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(HprefError::InvalidArgument(_)) => 1,
            CliError::File {
                source: HprefError::InvalidArgument(_),
                ..
            } => 1,
            CliError::Grid(_) => 1,
            CliError::File { .. } | CliError::Core(_) => 2,
            CliError::Unstable { .. } => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Attaches a path to errors raised while reading or writing it.
pub fn at<T>(path: &std::path::Path, r: hpref::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}
