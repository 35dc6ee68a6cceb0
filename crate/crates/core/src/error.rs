use thiserror::Error;

/// Failures raised by the numerical routines.
///
/// Scalars are carried as `f64` so the error type does not depend on the
/// model's scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("extinction regime: net growth rate {rho} <= 0 (g'(0)e^f'(0) <= 1)")]
    ExtinctionRegime { rho: f64 },
    #[error("negative density {value} passed to a pointwise map")]
    NegativeDensity { value: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0}; only 1 and 2 are supported")]
    UnsupportedDimension(usize),
    #[error("a closed form requires a Gaussian or point-mass dispersal kernel")]
    KernelUnsupported,
    #[error("operation requires isotropic diffusion A = d I")]
    AnisotropyUnsupported,
    #[error("no persistence window: radicand {radicand} <= 0")]
    NoPersistenceWindow { radicand: f64 },
    #[error("growth function vanishes at {at} inside the integration interval")]
    QuadratureSingularity { at: f64 },
    #[error("quadrature did not converge: estimated error {error} after {intervals} subintervals")]
    QuadratureDiverged { error: f64, intervals: usize },
    #[error("ray speed is unbounded below: c*(e~) <= 0 for a direction with positive projection")]
    RayUnbounded,
    #[error("field exceeds {level} within the edge band after generation {generation}; periodic wrap-around would corrupt the run")]
    BoundaryContamination { generation: usize, level: f64 },
    #[error("dispersal kernel support {support} exceeds the grid half-extent {extent}")]
    KernelGridMismatch { support: f64, extent: f64 },
    #[error("no threshold crossing found along the requested direction")]
    FrontNotFound,
    #[error("need at least {needed} generations after burn-in, have {available}")]
    InsufficientGenerations { needed: usize, available: usize },
    #[error("bracket [{lo}, {hi}] is invalid: both endpoints classify as {verdict}")]
    BracketInvalid { lo: f64, hi: f64, verdict: String },
    #[error("recursion profile reached the edge of the s-grid")]
    GridExhausted,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("no equilibrium found: {0}")]
    NoEquilibrium(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
