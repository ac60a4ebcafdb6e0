use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Schema(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Core(#[from] loopbank::Error),
}

/// Machine-readable error written to stderr.
#[derive(Debug, Serialize)]
pub struct ErrorObject {
    pub error: &'static str,
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        use loopbank::Error as E;
        match self {
            CliError::Schema(_) => "schema",
            CliError::Io { .. } => "io",
            CliError::Core(e) => match e {
                E::ShapeMismatch { .. }
                | E::OffCircle(_)
                | E::NonUnitary(_)
                | E::NotMonomial(_)
                | E::InvalidProjection(_)
                | E::BankNotUnitary(_)
                | E::WrongDimension(_)
                | E::NonUnitInput(_)
                | E::ScaleMismatch(..) => "validation",
                E::DegreeZero
                | E::RankAmbiguous(_)
                | E::RowConditionViolated { .. }
                | E::QmfConditionViolated(_)
                | E::LowPassViolated(_)
                | E::CascadeTooLarge(_) => "precondition",
                E::FactorizationCheck(_)
                | E::CornerLeak(_)
                | E::IsometryDefect(_)
                | E::BlockFormViolated(_)
                | E::EigenFailure(_) => "internal",
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "precondition" => 3,
            "internal" => 4,
            _ => 2,
        }
    }

    pub fn to_object(&self) -> ErrorObject {
        ErrorObject { error: self.kind(), exit_code: self.exit_code(), message: self.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
