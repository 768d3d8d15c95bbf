use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: {source}")]
    Parse {
        origin: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("solver failed: {0}")]
    Solver(#[from] mlmarket_core::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Self::Invalid(msg.into())
    }

    pub(crate) fn in_agent(self, id: &str) -> Self {
        match self {
            Self::Invalid(m) => Self::Invalid(format!("agent `{id}` {m}")),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
