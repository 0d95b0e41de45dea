use std::fmt;

/// CLI failure modes mapped to exit codes: configuration problems exit 2,
/// runtime failures exit 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Run(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Run(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Run(m) => write!(f, "run error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<salsa_core::Error> for CliError {
    fn from(e: salsa_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}
