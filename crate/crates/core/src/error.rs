use core::fmt;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the operation.
    Domain(&'static str),
    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    Convergence {
        subdivisions: usize,
        estimated_error: f64,
    },
    /// An integrand or intermediate value was NaN or infinite.
    NonFinite { at: f64 },
    /// The one-sided derivative limit at a support endpoint is infinite.
    EndpointSingular { endpoint: f64 },
    /// No spectral null was bracketed below the search limit.
    NoNullFound { search_hi_nu: f64 },
    /// Two gridded densities do not share a sample spacing.
    GridMismatch { left_dx: f64, right_dx: f64 },
    /// A requested tone is at or above half the sample rate.
    Nyquist { frequency: f64, sample_rate: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Convergence {
                subdivisions,
                estimated_error,
            } => write!(
                f,
                "quadrature did not converge after {subdivisions} subdivisions (error estimate {estimated_error:e})"
            ),
            Error::NonFinite { at } => write!(f, "non-finite value encountered at {at}"),
            Error::EndpointSingular { endpoint } => {
                write!(f, "derivative is unbounded at support endpoint {endpoint}")
            }
            Error::NoNullFound { search_hi_nu } => {
                write!(f, "no spectral null found for nu in (0, {search_hi_nu}]")
            }
            Error::GridMismatch { left_dx, right_dx } => {
                write!(f, "grid spacing mismatch: {left_dx} vs {right_dx}")
            }
            Error::Nyquist {
                frequency,
                sample_rate,
            } => write!(
                f,
                "tone at {frequency} Hz violates Nyquist for sample rate {sample_rate} Hz"
            ),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Convergence { .. } | Error::NonFinite { .. })
    }
}
