use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("vector length {actual} does not match node count {expected}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("graph is disconnected; extract the largest connected component first (`lcc` subcommand)")]
    Disconnected,

    #[error("dense path refused: n = {n} exceeds the guard {guard}; use the approximate method")]
    DenseGuard { n: usize, guard: usize },

    #[error("forest enumeration refused: n = {n} exceeds the cap {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error(
        "solver did not certify within {iterations} iterations \
         (relative residual {residual:.3e}, threshold {threshold:.3e}, stagnated: {stagnated})"
    )]
    Convergence {
        iterations: usize,
        residual: f64,
        threshold: f64,
        stagnated: bool,
        /// Best iterate reached before giving up.
        best_iterate: Vec<f64>,
        /// T-norm bound the best iterate still certifies.
        achieved_delta: f64,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
