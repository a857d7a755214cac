use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Matsubara sum failed to converge within the mode budget.
    #[error("Matsubara sum not converged to {tol:e} within {m_max} modes")]
    Truncation { tol: f64, m_max: u64 },

    /// A curve evaluated to NaN or infinity.
    #[error("non-finite value {value} at y = {y}")]
    NonFinite { y: f64, value: f64 },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}
