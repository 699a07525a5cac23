use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {0:e})")]
    NonHermitianInput(f64),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("unphysical X-state parameters: {0}")]
    UnphysicalParams(String),
    #[error("matrix is not an X state: {0}")]
    NotAnXState(String),
    #[error("vector is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("negative discriminant {0:e} in post-measurement spectrum")]
    NegativeDiscriminant(f64),
    #[error("negative eigenvalue {0:e} in rho * rho-tilde spectrum")]
    NegativeSpectrum(f64),
    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("ordering |c1| < |c2| < |c3| violated")]
    OrderingViolated,
}

pub type Result<T> = std::result::Result<T, Error>;
