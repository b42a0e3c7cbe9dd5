use current::CurrentError;
use diagrams::DiagError;
use ffmap::FfError;
use psido::PsiError;
use pva::PvaError;
use scalars::ScalarError;
use thiserror::Error;
use winterp::WError;

/// Failures that stop a command before a report exists.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Horizon(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Horizon(_) => 3,
        }
    }
}

fn psi_horizon(e: &PsiError) -> bool {
    matches!(e, PsiError::HorizonExhausted { .. })
}

fn w_horizon(e: &WError) -> bool {
    match e {
        WError::Pva(p) => p.is_horizon(),
        WError::Psi(p) => psi_horizon(p),
        _ => false,
    }
}

fn classify(horizon: bool, msg: String) -> CliError {
    if horizon {
        CliError::Horizon(msg)
    } else {
        CliError::Usage(msg)
    }
}

impl From<WError> for CliError {
    fn from(e: WError) -> Self {
        classify(w_horizon(&e), e.to_string())
    }
}

impl From<PvaError> for CliError {
    fn from(e: PvaError) -> Self {
        classify(e.is_horizon(), e.to_string())
    }
}

impl From<PsiError> for CliError {
    fn from(e: PsiError) -> Self {
        classify(psi_horizon(&e), e.to_string())
    }
}

impl From<FfError> for CliError {
    fn from(e: FfError) -> Self {
        let horizon = matches!(&e, FfError::W(w) if w_horizon(w));
        classify(horizon, e.to_string())
    }
}

impl From<CurrentError> for CliError {
    fn from(e: CurrentError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DiagError> for CliError {
    fn from(e: DiagError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        CliError::Usage(e.to_string())
    }
}
