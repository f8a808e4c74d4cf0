use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    #[error("length mismatch for {what}: expected {expected}, got {actual}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error(
        "{nn} samples cannot be strided onto {m} nodes ({nn} - 1 is not a multiple of {m} - 1)"
    )]
    NotDownsamplable { nn: usize, m: usize },
    #[error("singular value decomposition did not converge")]
    SvdFailed,
    #[error("leaf [{a}, {b}] does not lie on the dyadic grid of the interval")]
    NonDyadicLeaf { a: f64, b: f64 },
    #[error(
        "alpha bracket does not straddle the discrepancy level {target:e} \
         (residual {residual_lo:e} at alpha_lo, {residual_hi:e} at alpha_hi); widen the bracket"
    )]
    AlphaBracket {
        target: f64,
        residual_lo: f64,
        residual_hi: f64,
    },
    #[error("Tikhonov residual decreased from {previous:e} to {current:e} while alpha increased")]
    NonMonotoneResidual { previous: f64, current: f64 },
    #[error("regularized normal equations are not positive definite at alpha = {alpha:e}")]
    NotPositiveDefinite { alpha: f64 },
}
