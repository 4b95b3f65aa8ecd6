use thiserror::Error;

/// Errors surfaced by the solvers and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the requested distribution.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The hypergeometric series hit its term budget before the stopping
    /// rule fired.
    #[error("series did not converge within {max_terms} terms (a={a}, b={b}, x={x})")]
    NonConvergence {
        a: f64,
        b: f64,
        x: f64,
        max_terms: usize,
    },

    /// No sign change was found while expanding the root bracket.
    #[error("no sign change for the stationary-point equation in [{inner}, {outer}]")]
    BracketFailure { inner: f64, outer: f64 },

    /// Root refinement hit the iteration cap.
    #[error("root refinement did not converge within {max_iter} iterations (last x={x})")]
    IterationLimit { x: f64, max_iter: usize },

    /// A marginal subset must be non-empty and strict.
    #[error("subset must be non-empty and strict (got {got} of {dim} indices)")]
    EmptyOrFullSubset { got: usize, dim: usize },

    /// A direction vector must lie on the probability simplex.
    #[error("direction is not on the simplex: {0}")]
    NotOnSimplex(String),

    /// The sup-ratio maximizer landed within 1% of the scan boundary;
    /// the caller should retry with a doubled range.
    #[error("sup-ratio maximizer {argmax} is within 1% of the boundary ±{lambda_max}")]
    BoundaryHit { argmax: f64, lambda_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
