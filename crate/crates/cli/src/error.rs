use thiserror::Error;

/// Failure classes, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<modsym::Error> for CliError {
    fn from(e: modsym::Error) -> Self {
        use modsym::Error as E;
        let msg = e.to_string();
        match e {
            E::Domain(_) | E::Shape(_) | E::InvalidSubgroup { .. } => CliError::Usage(msg),
            E::UnsupportedRing(_) | E::Unsupported(_) => CliError::Unsupported(msg),
            E::IllDefinedMap(_) | E::Internal(_) => CliError::Invariant(msg),
        }
    }
}

/// Fails with exit code 4 unless `cond` holds.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Invariant(msg()))
    }
}
