//! Exact arithmetic over Z[v, v^-1] and Q(v).

mod laurent;
mod linalg;
mod quantum;
mod rational;

use alloc::string::String;

pub use laurent::{Laurent, Point};
pub use linalg::{determinant, inverse, rank, ratfun_solve, solve_matrix, RatMatrix, SolveOutcome};
pub use quantum::{qbinomial, qfactorial, qint};
pub use rational::RationalScalar;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division left a remainder")]
    InexactDivision,
    #[error("value is not a Laurent polynomial")]
    NotLaurent,
    #[error("series coefficient is not an integer")]
    NotIntegral,
    #[error("argument out of range: {0}")]
    Argument(String),
    #[error("cannot parse Laurent polynomial {0:?}")]
    Parse(String),
}

/// Which quantum number to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantumKind {
    Integer,
    Factorial,
    Binomial,
}

/// Checked front end for `[n]`, `[n]!` and `[n choose k]` with `0 <= k <= n`.
pub fn quantum_combinatorics(kind: QuantumKind, n: i64, k: i64) -> Result<Laurent, ExactError> {
    if n < 0 {
        return Err(ExactError::Argument(alloc::format!("n = {n} is negative")));
    }
    match kind {
        QuantumKind::Integer => Ok(qint(n)),
        QuantumKind::Factorial => Ok(qfactorial(n as u32)),
        QuantumKind::Binomial => {
            if k < 0 || k > n {
                return Err(ExactError::Argument(alloc::format!("k = {k} outside 0..={n}")));
            }
            Ok(qbinomial(n, k as u32))
        }
    }
}
