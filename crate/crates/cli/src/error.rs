use thiserror::Error;

use jostkohn::analytic::AnalyticError;
use jostkohn::feshbach::FeshbachError;
use jostkohn::numerics::NumericsError;
use jostkohn::params::ParamError;
use jostkohn::potentials::PotentialError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Feshbach(#[from] FeshbachError),
    #[error("{0}")]
    Validation(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
