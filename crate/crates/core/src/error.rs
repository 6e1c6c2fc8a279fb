use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A moment or integral that does not converge on the given support.
    #[error("divergent integral: {0}")]
    Divergent(String),

    /// The spectral density is a point mass: the state never decays.
    #[error("stable: infinite lifetime for a point-mass spectrum")]
    Stable,

    /// The spectral density must integrate to one for this operation.
    #[error("spectral density not normalized (total mass {0})")]
    NotNormalized(f64),

    /// Two hyperplane normals coincide (or nearly so).
    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    /// Panel quadrature ran out of budget before reaching the tolerance.
    #[error("quadrature did not converge: achieved error {achieved:.3e}, requested {requested:.3e}")]
    Quadrature { achieved: f64, requested: f64 },

    /// Long-time tail of the survival probability too heavy for the budget.
    #[error("lifetime tail not converged: tail bound {tail:.3e} exceeds budget {budget:.3e}")]
    Tail { tail: f64, budget: f64 },

    /// Malformed input (files, scenarios, tables).
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Quadrature { .. } | Error::Tail { .. })
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
