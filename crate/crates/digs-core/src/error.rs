//! Error and warning types shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Failures raised by solvers and closed-form evaluators.
///
/// Degenerate inputs are reported, never silently regularized.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Open-configuration generator has no unique steady state (e.g. all
    /// decays zero, so the affine system is singular).
    #[error("singular-system: open-configuration generator is not invertible")]
    SingularSystem,

    /// Closed-configuration generator has a kernel of dimension > 1, so the
    /// trace constraint does not pick a unique state.
    #[error("non-unique-kernel: closed-configuration kernel is degenerate")]
    NonUniqueKernel,

    /// Steady-state candidate failed the residual bound.
    #[error("residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    /// Requested a dressed-basis rotation for a manifold with no splitting.
    #[error("degenerate-manifold: effective Rabi frequency is zero")]
    DegenerateManifold,

    /// Dressed-state decomposition with both coupling fields off.
    #[error("degenerate gain-state decomposition: omega_mu = omega_c = 0")]
    DegenerateGainState,

    /// Named preset does not exist.
    #[error("unknown-preset: {0}")]
    UnknownPreset(String),

    /// A closed-form denominator vanished.
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    /// Z_+/- pole hit while evaluating the susceptibility.
    #[error("Z-pole: susceptibility denominator vanished at delta_p = {delta_p}")]
    ZPole { delta_p: f64 },

    /// The equal-combination condition behind a generalized population failed.
    #[error("generalized-population condition violated: branches {lhs} vs {rhs}")]
    ConditionViolated { lhs: Complex64, rhs: Complex64 },

    /// Adaptive quadrature hit the depth cap before reaching tolerance.
    #[error("quadrature-not-converged: estimate {estimate}, error bound {error_bound:.3e}")]
    QuadratureNotConverged {
        estimate: Complex64,
        error_bound: f64,
    },

    /// Grid does not resolve the requested derivative.
    #[error("grid-too-coarse: {0}")]
    GridTooCoarse(&'static str),

    /// Config file could not be parsed or failed validation.
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Non-fatal caution attached to a result, typically a violated
/// validity-regime ordering. Formulas still evaluate.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Warning {
    /// Stable identifier, e.g. `regime-probe-strong`.
    pub rule: &'static str,
    /// Human-readable statement of the violated condition.
    pub message: String,
}

impl Warning {
    pub fn new(rule: &'static str, message: impl Into<String>) -> Self {
        Self {
            rule,
            message: message.into(),
        }
    }
}
