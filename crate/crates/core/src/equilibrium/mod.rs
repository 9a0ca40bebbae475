//! Exact solution of small games: policy-pair evaluation, Shapley value
//! iteration, best responses, naive policy iteration and the best-response
//! sandwich around the game value.

mod best_response;
mod eval;
mod npi;
mod sandwich;
mod shapley;

pub use best_response::{best_response, solve_view, BestResponse, DIVERGENCE_CAP, MAX_SWEEPS};
pub use eval::evaluate_policy_pair;
pub use npi::{naive_policy_iteration, PolicyIterationTrace, PolicyRound};
pub use sandwich::{sandwich, SandwichResult};
pub use shapley::{continuation_matrix, shapley_operator, shapley_value_iteration, ShapleySolution};
pub(crate) use eval::trapped_states as trapped;
