use serde::Serialize;

use super::{evaluate_policy_pair, shapley_operator};
use crate::error::Result;
use crate::game::{GameModel, MixedPolicy, ValueFunction};

#[derive(Clone, Debug, Serialize)]
pub struct PolicyRound {
    pub k: usize,
    pub mu: MixedPolicy,
    pub nu: MixedPolicy,
    pub values: ValueFunction,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolicyIterationTrace {
    pub rounds: Vec<PolicyRound>,
    /// `deltas[k-1] = |J^k - J^{k-1}|_inf`.
    pub deltas: Vec<f64>,
    pub converged: bool,
    /// Set when some delta grew relative to its predecessor.
    pub non_monotone: bool,
    /// Error that stopped the trace early, if any.
    pub failure: Option<String>,
}

impl PolicyIterationTrace {
    pub fn last(&self) -> &PolicyRound {
        self.rounds.last().expect("trace holds at least round 0")
    }
}

const CONVERGED_DELTA: f64 = 1e-9;

/// Naive (Pollatschek-Avi-Itzhak) policy iteration: evaluate the current
/// pair exactly, then replace both policies by the stagewise equilibria of
/// the one-step lookahead games. Records `rounds` evaluations, k = 0..rounds-1.
///
/// There is no convergence guarantee; the trace only reports what happened.
/// The starting pair must be proper, later failures end the trace early.
pub fn naive_policy_iteration(
    model: &GameModel,
    mu0: &MixedPolicy,
    nu0: &MixedPolicy,
    rounds: usize,
) -> Result<PolicyIterationTrace> {
    let values = evaluate_policy_pair(model, mu0, nu0)?;
    let mut trace = PolicyIterationTrace {
        rounds: vec![PolicyRound { k: 0, mu: mu0.clone(), nu: nu0.clone(), values }],
        deltas: Vec::new(),
        converged: false,
        non_monotone: false,
        failure: None,
    };
    for k in 1..rounds.max(1) {
        let prev = trace.last();
        let (mu, nu) = match shapley_operator(model, &prev.values) {
            Ok((_, mu, nu)) => (mu, nu),
            Err(e) => {
                trace.failure = Some(e.to_string());
                break;
            }
        };
        let values = match evaluate_policy_pair(model, &mu, &nu) {
            Ok(v) => v,
            Err(e) => {
                trace.failure = Some(e.to_string());
                break;
            }
        };
        let delta = values.sup_distance(&prev.values);
        if trace.deltas.last().is_some_and(|&d| delta > d) {
            trace.non_monotone = true;
        }
        trace.deltas.push(delta);
        trace.rounds.push(PolicyRound { k, mu, nu, values });
    }
    trace.converged = trace.deltas.last().is_some_and(|&d| d < CONVERGED_DELTA);
    Ok(trace)
}
