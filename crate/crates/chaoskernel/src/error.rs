use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures surfaced by numerical operations. `op` names the operation that failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument lies on the branch cut (negative real axis)")]
    BranchCut { op: &'static str },

    #[error("{op}: no sign change on [{lo}, {hi}]")]
    NoSignChange { op: &'static str, lo: f64, hi: f64 },

    #[error("{op}: no convergence after {iterations} iterations")]
    NoConvergence { op: &'static str, iterations: usize },

    #[error("{op}: decay envelope violated at t = {t} (|f| = {value}, bound = {bound})")]
    EnvelopeViolation { op: &'static str, t: f64, value: f64, bound: f64 },

    #[error("{op}: tolerance {tol:e} unreachable within {budget} panels (estimate {achieved:e})")]
    BudgetExceeded { op: &'static str, tol: f64, budget: usize, achieved: f64 },

    #[error("{op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: non-finite value encountered")]
    NonFinite { op: &'static str },

    #[error("{op}: path blow-up at step {step} (|λ| = {lambda})")]
    PathBlowUp { op: &'static str, step: usize, lambda: f64 },

    #[error("{op}: {detail}")]
    InvalidInput { op: &'static str, detail: String },
}

impl Error {
    pub fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub fn invalid(op: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidInput { op, detail: detail.into() }
    }

    /// Name of the operation that failed.
    pub fn op(&self) -> &'static str {
        match self {
            Error::BranchCut { op }
            | Error::NoSignChange { op, .. }
            | Error::NoConvergence { op, .. }
            | Error::EnvelopeViolation { op, .. }
            | Error::BudgetExceeded { op, .. }
            | Error::Domain { op, .. }
            | Error::NonFinite { op }
            | Error::PathBlowUp { op, .. }
            | Error::InvalidInput { op, .. } => op,
        }
    }
}
