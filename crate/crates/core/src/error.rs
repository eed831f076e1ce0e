//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by construction and evaluation routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A truncated construction discarded more probability weight than the budget allows.
    #[error("truncation loss {loss:.3e} exceeds budget {budget:.3e}")]
    Truncation { loss: f64, budget: f64 },

    /// Two objects defined on Fock spaces of different dimension were combined.
    #[error("Fock space mismatch: dim {left} vs dim {right}")]
    SpaceMismatch { left: usize, right: usize },

    /// A construction degenerates (e.g. odd cat state at alpha = 0, Mandel parameter of vacuum).
    #[error("degenerate state: {0}")]
    DegenerateState(String),

    /// Mixture weights are negative or do not sum to one.
    #[error("invalid mixture weights: {0}")]
    Weight(String),

    /// A POVM element has eigenvalues outside [0, 1].
    #[error("POVM element violates 0 <= \u{0394} <= I: eigenvalue range [{min:.3e}, {max:.3e}]")]
    PovmBound { min: f64, max: f64 },

    /// An iterative maximization failed to reach its tolerance.
    #[error("maximization failed to converge: {0}")]
    Convergence(String),

    /// A quadrature rule could not certify its tail or tolerance.
    #[error("quadrature failure: {0}")]
    Quadrature(String),

    /// Pointwise evaluation of a P function that is a genuine distribution.
    #[error("P representative is singular; no pointwise closed form")]
    SingularP,

    /// A Gaussian-only routine was handed non-Gaussian statistics.
    #[error("statistics are not Gaussian: {0}")]
    NotGaussian(String),

    /// A discrete-outcome bound was requested for an element without finite trace.
    #[error("POVM element has no finite trace")]
    InfiniteTrace,

    /// Finite-sampling analysis applies to probabilities, not densities.
    #[error("finite-sampling significance is undefined for density reports")]
    DensityUnsupported,

    /// The tail of a radial integration grid carries too much weight.
    #[error("integration tail bound violated: tail {tail:.3e} of estimate {estimate:.3e}")]
    Tail { tail: f64, estimate: f64 },

    /// A spin routine restricted to specific j values was called outside them.
    #[error("unsupported spin quantum number: 2j = {0}")]
    UnsupportedJ(u32),

    /// Parameter outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
