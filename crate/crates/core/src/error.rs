use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension pair (n, k) = ({n}, {k}): require n >= 3, k >= 1 and 2k < n")]
    InvalidDimension { n: i64, k: i64 },
    #[error("jet order {have} too low, need at least {need}")]
    OrderTooLow { have: usize, need: usize },
    #[error("jet at radius 0 has nonzero odd derivative of order {order}")]
    OddJetAtOrigin { order: usize },
    #[error("expression outside the closed radial family: {0}")]
    OutsideFamily(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("extrapolation did not converge: estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    Extrapolation { estimate: f64, tolerance: f64 },
    #[error("weighted Laplacian not invertible: factor vanishes on component p = {p}, harmonic degree {ell}")]
    NotInvertible { p: u32, ell: u32 },
    #[error("sphere average of {which} is {value}, expected 0")]
    NonzeroMean { which: String, value: String },
    #[error("correction contribution {value:e} exceeds tolerance {tolerance:e}")]
    CorrectionNonzero { value: f64, tolerance: f64 },
    #[error("Newton iteration diverged after {iterations} iterations (residual {residual:e})")]
    NewtonDivergence { iterations: usize, residual: f64 },
    #[error("solution lost positivity at grid node {node} (t = {t}, u = {value:e})")]
    LostPositivity { node: usize, t: f64, value: f64 },
    #[error("pole is not a critical maximum: {0}")]
    PoleNotMax(String),
    #[error("Giraud regime misclassified: {0}")]
    Regime(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}
