use thiserror::Error;

/// Errors shared by the Fock-space oracle, the closed-form layer, and the
/// numerical optimizers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violated a precondition (negative squeeze magnitude,
    /// non-positive tolerance, variance of the wrong sign, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The matrix exponential failed its a-posteriori accuracy check.
    #[error(
        "matrix exponential did not converge: achieved residual {residual:.3e} \
         exceeds tolerance {tol:.3e}"
    )]
    ExpNotConverged { residual: f64, tol: f64 },

    /// A truncated Fock space of the given dimension cannot hold the requested
    /// state to the requested accuracy; `leakage` is the last estimate of the
    /// probability mass sitting near the cutoff.
    #[error("Fock cutoff {dim} too small: leakage estimate {leakage:.3e}")]
    CutoffTooSmall { dim: usize, leakage: f64 },

    /// The mean-photon-number budget cannot accommodate the Fock excitation.
    #[error("infeasible: n exceeds energy budget (n = {n}, ns = {ns})")]
    InfeasibleBudget { ns: f64, n: usize },

    /// A derivative-free search could not bracket an interior maximum.
    #[error("bracket failure: no interior maximum found on [{lo:.6e}, {hi:.6e}]")]
    BracketFailure { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
