use thiserror::Error;

use crate::game::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not a probability vector: {0}")]
    NotSimplex(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("empty payoff matrix")]
    EmptyMatrix,

    #[error("model failed validation with {} violation(s)", .0.len())]
    Invalid(Vec<Diagnostic>),

    #[error("operation requires a {expected} regime")]
    WrongRegime { expected: &'static str },

    #[error("horizon must be at least 1")]
    ZeroHorizon,

    #[error("policy pair is improper: state {state} cannot reach the absorbing state")]
    ImproperPair { state: usize },

    #[error("linear system for policy evaluation is singular")]
    Singular,

    #[error("no convergence after {iterations} iterations (last delta {last_delta:e})")]
    NoConvergence { iterations: usize, last_delta: f64 },

    #[error("best-response value is unbounded at state {state}")]
    UnboundedValue { state: usize },

    #[error("realized state {next} is outside the support of p(.|{state}, {action})")]
    SupportViolation { state: usize, action: usize, next: usize },

    #[error("scenario length {got} does not match horizon {expected}")]
    HorizonMismatch { expected: usize, got: usize },

    #[error("enumeration needs {cells} cells, budget is {budget}")]
    CellBudgetExceeded { cells: f64, budget: usize },

    #[error("reference measure misses a reachable transition {state} -> {next} (action {action})")]
    AbsContinuity { state: usize, action: usize, next: usize },

    #[error("reference path exceeded {0} steps without absorption")]
    PathCapExceeded(usize),

    #[error("at least two scenarios are needed for a standard error (got {0})")]
    TooFewScenarios(usize),

    #[error("sandwich ordering violated at state {state}: lower {lower} > upper {upper}")]
    SandwichViolated { state: usize, lower: f64, upper: f64 },

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Input problems map to exit code 2, everything else to 1.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_)
                | Error::NotSimplex(_)
                | Error::NonFinite { .. }
                | Error::EmptyMatrix
                | Error::Invalid(_)
                | Error::WrongRegime { .. }
                | Error::ZeroHorizon
                | Error::AbsContinuity { .. }
                | Error::Config(_)
                | Error::Json(_)
        )
    }
}
