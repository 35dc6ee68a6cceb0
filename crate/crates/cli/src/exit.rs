use impulse_front::Error;

/// Failure classes and their process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid configuration (exit 2).
    Config(String),
    /// Parameters outside the regime where the requested quantity exists (exit 3).
    Regime(String),
    /// A numerical run aborted (exit 4).
    Numerical(String),
    /// Output could not be written; counted as a configuration error (exit 2).
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Regime(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) | CliError::Regime(m) | CliError::Numerical(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::ExtinctionRegime { .. }
            | Error::NoPersistenceWindow { .. }
            | Error::NoEquilibrium(_)
            | Error::RayUnbounded => CliError::Regime(msg),
            Error::InvalidArgument(_)
            | Error::DimensionMismatch { .. }
            | Error::UnsupportedDimension(_)
            | Error::KernelUnsupported
            | Error::AnisotropyUnsupported
            | Error::NegativeDensity { .. }
            | Error::BracketInvalid { .. }
            | Error::KernelGridMismatch { .. }
            | Error::InsufficientGenerations { .. } => CliError::Config(msg),
            Error::BoundaryContamination { .. }
            | Error::QuadratureSingularity { .. }
            | Error::QuadratureDiverged { .. }
            | Error::GridExhausted
            | Error::InvariantViolation(_)
            | Error::FrontNotFound => CliError::Numerical(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
