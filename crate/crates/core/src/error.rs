use thiserror::Error;

/// Errors produced anywhere in the simulator, compiler or harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("degenerate ground state: r = {r} lies within {guard:e} of the level crossing r = 1")]
    Degenerate { r: f64, guard: f64 },

    #[error("adiabatic gap closed at s = {s}: instantaneous gap {gap:e}")]
    GapClosure { s: f64, gap: f64 },

    #[error("phase undefined: trace magnitude {0:e} is too small")]
    UndefinedPhase(f64),

    #[error("no J coupling between spins {0} and {1}")]
    ZeroCoupling(String, String),

    #[error("unknown spin label {label:?} (register has {n_spins} spins)")]
    UnknownSpin { label: String, n_spins: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("compiled sequence failed verification: fidelity {fidelity} < {threshold}")]
    Verification { fidelity: f64, threshold: f64 },

    #[error("schema error at row {row}: {msg}")]
    Schema { row: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
