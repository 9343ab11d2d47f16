use coarse_core::covered_space::CoverError;
use coarse_core::decomposition::NormError;
use coarse_core::embeddings::EmbeddingError;
use coarse_core::groups::GroupError;
use coarse_core::invariants::InvariantError;
use coarse_core::io::IoError;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("computation error: {0}")]
    Compute(String),
    /// A budget ran out; `partial` holds whatever was computed before.
    #[error("resource limit: {message}")]
    Resource {
        message: String,
        partial: Option<Value>,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) => 3,
            CliError::Resource { .. } => 4,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    fn resource(msg: String, partial: Option<Value>) -> Self {
        CliError::Resource {
            message: msg,
            partial,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::ResourceLimit { ref partial, .. } => {
                let partial = serde_json::to_value(partial).ok();
                CliError::resource(e.to_string(), partial)
            }
            GroupError::Parse { .. } | GroupError::InvalidModel(_) => {
                CliError::Config(e.to_string())
            }
            GroupError::AboveCap { .. } => CliError::Compute(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::ResourceLimit { ref partial } => {
                let partial = serde_json::to_value(partial).ok();
                CliError::resource(e.to_string(), partial)
            }
            InvariantError::Group(g) => g.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::Group(g) => g.into(),
            CoverError::UnsupportedWindow { .. } | CoverError::InvalidSpec(_) => {
                CliError::Config(e.to_string())
            }
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<NormError> for CliError {
    fn from(e: NormError) -> Self {
        match e {
            NormError::InvalidGrid(_) | NormError::UnsupportedCovering(_) => {
                CliError::Config(e.to_string())
            }
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::Cover(c) => c.into(),
            EmbeddingError::Norm(n) => n.into(),
            EmbeddingError::InvalidInput(_) => CliError::Config(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Config(e.to_string())
    }
}
