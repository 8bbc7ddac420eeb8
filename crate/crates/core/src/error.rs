use thiserror::Error;

/// Failures reported by the solvers and closed-form evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on the physical or numerical inputs does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature hit its subdivision limit. The partial result is kept.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (partial value {value:e}, error estimate {abs_error:e})"
    )]
    Quadrature {
        value: f64,
        abs_error: f64,
        subdivisions: usize,
    },

    /// The matching defect has the same sign at both ends of the energy window.
    #[error("matching defect does not change sign on [{lo:e}, {hi:e}]")]
    Bracket { lo: f64, hi: f64 },

    /// A root was found but the node count identifies a different state.
    #[error("converged to a state with {found} nodes at E = {energy:e}, expected {expected}")]
    WrongState {
        found: usize,
        expected: usize,
        energy: f64,
    },

    /// The condition V1^2 >= V2^2 fails somewhere on the grid.
    #[error("V1^2 >= V2^2 violated first at r = {radius:e}")]
    ConditionViolation { radius: f64 },

    #[error("state is not normalizable: {0}")]
    NonNormalizable(String),

    /// Overflow, NaN or a failed iteration inside a numerical routine.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by invalid inputs rather than by the numerics.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::ConditionViolation { .. } | Error::NonNormalizable(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
