use shuffle_core::cartan::CartanError;
use shuffle_core::exactalg::AlgError;
use shuffle_core::fgl::FglError;
use shuffle_core::quiver::QuiverError;
use shuffle_core::serre::SerreError;
use shuffle_core::shuffle::ShuffleError;
use shuffle_core::yangian::YangianError;
use thiserror::Error;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Input = 2,
    Limit = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Input => "input-error",
            Status::Limit => "limit-exceeded",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Limit(String),
    /// A computation contradicted an identity; the message is the witness.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) => Status::Input,
            CliError::Limit(_) => Status::Limit,
            CliError::Failed(_) => Status::Failed,
        }
    }
}

impl From<AlgError> for CliError {
    fn from(e: AlgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FglError> for CliError {
    fn from(e: FglError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ShuffleError> for CliError {
    fn from(e: ShuffleError) -> Self {
        match e {
            ShuffleError::LimitExceeded(m) => CliError::Limit(m),
            ShuffleError::PoleNotCancelled(m) => CliError::Failed(format!("pole not cancelled: {}", m)),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SerreError> for CliError {
    fn from(e: SerreError) -> Self {
        match e {
            SerreError::LimitExceeded { .. } => CliError::Limit(e.to_string()),
            SerreError::NotLambdaFree(_) => CliError::Failed(e.to_string()),
            SerreError::ZeroN => CliError::Input(e.to_string()),
        }
    }
}

impl From<CartanError> for CliError {
    fn from(e: CartanError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<YangianError> for CliError {
    fn from(e: YangianError) -> Self {
        match e {
            YangianError::Shuffle(s) => s.into(),
            YangianError::Serre(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}
