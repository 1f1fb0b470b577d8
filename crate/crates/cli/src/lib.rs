//! Configuration, result tables, caching and the commands behind `kacq`.

pub mod cache;
pub mod commands;
pub mod config;
pub mod table;

use kac_core::engine::EngineError;
use kac_core::oracle::OracleError;
use kac_core::series::DimVector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("provider has no value at {}", list(.0))]
    ProviderGap(Vec<DimVector>),
    #[error("internal check failed: {0}")]
    Check(String),
    #[error("oracle budget exceeded: {0}")]
    Budget(String),
    #[error("i/o error: {0}")]
    Io(String),
}

fn list(v: &[DimVector]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl CliError {
    /// 1 internal check failure, 2 config error, 3 provider gap, 4 oracle budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::ProviderGap(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::ProviderGap(v) => CliError::ProviderGap(v),
            EngineError::InvalidQuiver(_) | EngineError::ProviderMismatch(_) | EngineError::DimensionMismatch { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Check(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Budget { .. } | OracleError::InsufficientSamples { .. } => CliError::Budget(e.to_string()),
            OracleError::Engine(inner) => inner.into(),
            OracleError::Shape(_) => CliError::Check(e.to_string()),
            OracleError::InvalidField(_) | OracleError::Reducible(_) | OracleError::InvalidRelation(_) => {
                CliError::Config(e.to_string())
            }
        }
    }
}
