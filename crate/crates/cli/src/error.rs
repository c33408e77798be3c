use ellcong::function_field::FunctionFieldError;
use ellcong::global::GlobalError;
use ellcong::padic::PadicError;
use ellcong::satake::SatakeError;
use ellcong::whittaker::WhittakerError;
use thiserror::Error;

/// Exit status of a finished run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Violation = 1,
    InputError = 2,
    PrecisionError = 3,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Violation => "violation",
            Status::InputError => "input-error",
            Status::PrecisionError => "precision-error",
        }
    }
}

#[derive(Debug, Error)]
#[error("{message}")]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { status: Status::InputError, message: message.into() }
    }

    fn with(status: Status, e: impl std::fmt::Display) -> Self {
        CliError { status, message: e.to_string() }
    }
}

fn padic_status(e: &PadicError) -> Status {
    match e {
        PadicError::PrecisionLoss { .. } => Status::PrecisionError,
        _ => Status::InputError,
    }
}

fn ff_status(e: &FunctionFieldError) -> Status {
    match e {
        FunctionFieldError::InsufficientPrecision { .. } | FunctionFieldError::TooLarge(_) => Status::PrecisionError,
        FunctionFieldError::Padic(p) => padic_status(p),
        _ => Status::InputError,
    }
}

fn satake_status(e: &SatakeError) -> Status {
    match e {
        SatakeError::Padic(p) => padic_status(p),
        _ => Status::InputError,
    }
}

fn whittaker_status(e: &WhittakerError) -> Status {
    match e {
        WhittakerError::Padic(p) => padic_status(p),
        WhittakerError::Satake(s) => satake_status(s),
        WhittakerError::TooLarge(_) => Status::PrecisionError,
        WhittakerError::NotIntegral | WhittakerError::NotCongruent => Status::Violation,
        _ => Status::InputError,
    }
}

fn global_status(e: &GlobalError) -> Status {
    match e {
        GlobalError::FunctionField(f) => ff_status(f),
        GlobalError::Padic(p) => padic_status(p),
        GlobalError::Satake(s) => satake_status(s),
        GlobalError::Whittaker(w) => whittaker_status(w),
        GlobalError::NotIntegral(_) => Status::Violation,
        _ => Status::InputError,
    }
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        CliError::with(padic_status(&e), e)
    }
}

impl From<FunctionFieldError> for CliError {
    fn from(e: FunctionFieldError) -> Self {
        CliError::with(ff_status(&e), e)
    }
}

impl From<SatakeError> for CliError {
    fn from(e: SatakeError) -> Self {
        CliError::with(satake_status(&e), e)
    }
}

impl From<WhittakerError> for CliError {
    fn from(e: WhittakerError) -> Self {
        CliError::with(whittaker_status(&e), e)
    }
}

impl From<GlobalError> for CliError {
    fn from(e: GlobalError) -> Self {
        CliError::with(global_status(&e), e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::input(format!("malformed JSON input: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(format!("cannot read input: {e}"))
    }
}
