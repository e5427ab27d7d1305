use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("splitting types have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("dominance is only defined at fixed entry sum ({left} vs {right})")]
    SumMismatch { left: i64, right: i64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("alpha = {alpha} outside the admissible range {min}..={max}")]
    InvalidAlpha { alpha: i64, min: i64, max: i64 },
    #[error("section count {h} is already below the target {target}")]
    AlreadyBelow { h: i64, target: i64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("tableau is not a {k}-uniform displacement tableau")]
    NotKUniform { k: i64 },
    #[error("tableau shape or alphabet does not match the instance: {0}")]
    GridMismatch(String),
    #[error("divisor degree {got} does not match the instance degree {want}")]
    DegreeMismatch { got: i64, want: i64 },
    #[error("statistic undefined at ({x},{y}): x+y < k = {k}")]
    Undefined { x: i64, y: i64, k: i64 },
    #[error("grid too small: a+b = {sum} < k = {k}")]
    GridTooSmall { sum: i64, k: i64 },
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
