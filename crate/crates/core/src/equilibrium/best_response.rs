use serde::Serialize;

use super::eval::{solve_chain, trapped_states};
use crate::error::{Error, Result};
use crate::game::{GameModel, MdpView, MixedPolicy, Orientation, Player, ValueFunction};

/// Value-iteration sweeps allowed before giving up.
pub const MAX_SWEEPS: usize = 100_000;
/// Iterates beyond this magnitude signal an improper fixed policy.
pub const DIVERGENCE_CAP: f64 = 1e8;
/// Sweeps between attempts to certify the greedy policy exactly.
const CHECK_EVERY: usize = 64;
const MAX_POLICY_STEPS: usize = 1_000;

#[derive(Clone, Debug, Serialize)]
pub struct BestResponse {
    pub values: ValueFunction,
    /// Responder's action per state.
    pub actions: Vec<usize>,
    /// Same actions as a degenerate mixed policy.
    pub policy: MixedPolicy,
    pub sweeps: usize,
}

/// Optimal response of the opponent of `fixed_player` to `fixed`.
pub fn best_response(model: &GameModel, fixed: &MixedPolicy, fixed_player: Player, tol: f64) -> Result<BestResponse> {
    let view = model.fix_player(fixed, fixed_player)?;
    solve_view(&view, tol)
}

/// Optimal value and a pure optimal policy of a one-player view.
///
/// Value iteration from zero, interleaved with exact evaluation of the greedy
/// policy. Once a greedy policy reproduces itself on its own exact value the
/// value is a Bellman fixed point and is returned. An improper greedy policy
/// that traps the process in states of strictly favourable cost proves the
/// optimum is infinite.
pub fn solve_view(view: &MdpView, tol: f64) -> Result<BestResponse> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
    }
    let n = view.n_states();
    let mut values = vec![0.0; n];
    for sweep in 1..=MAX_SWEEPS {
        let (next, greedy) = bellman(view, &values);
        let delta = sup_distance(&next, &values);
        values = next;
        if let Some(state) = values.iter().position(|v| v.abs() > DIVERGENCE_CAP) {
            return Err(Error::UnboundedValue { state });
        }
        let converged = delta < tol;
        if converged || sweep % CHECK_EVERY == 0 {
            if let Some(exact) = certify(view, greedy.clone())? {
                return Ok(finish(view, exact.0, exact.1, sweep));
            }
            if converged {
                return Ok(finish(view, values, greedy, sweep));
            }
        }
    }
    let (next, _) = bellman(view, &values);
    Err(Error::NoConvergence { iterations: MAX_SWEEPS, last_delta: sup_distance(&next, &values) })
}

fn finish(view: &MdpView, values: Vec<f64>, actions: Vec<usize>, sweeps: usize) -> BestResponse {
    let counts: Vec<usize> = (0..view.n_states()).map(|x| view.n_actions(x)).collect();
    BestResponse { policy: MixedPolicy::pure(&actions, &counts), values: ValueFunction(values), actions, sweeps }
}

/// Howard policy iteration from `policy`. `Ok(None)` means an improper
/// policy was met without an unboundedness certificate; value iteration then
/// carries on.
fn certify(view: &MdpView, mut policy: Vec<usize>) -> Result<Option<(Vec<f64>, Vec<usize>)>> {
    for _ in 0..MAX_POLICY_STEPS {
        let rows: Vec<Vec<f64>> = policy.iter().enumerate().map(|(x, &a)| view.kernel(x, a).to_vec()).collect();
        let costs: Vec<f64> = policy.iter().enumerate().map(|(x, &a)| view.cost(x, a)).collect();
        let values = match solve_chain(&rows, &costs, view.discount(), view.terminal()) {
            Ok(v) => v.0,
            Err(Error::ImproperPair { .. }) => {
                let terminal = view.terminal().expect("improper only arises with a terminal state");
                let trapped = trapped_states(&rows, terminal);
                let favourable = trapped.iter().all(|&x| match view.orientation() {
                    Orientation::Max => costs[x] > 0.0,
                    Orientation::Min => costs[x] < 0.0,
                });
                if favourable {
                    return Err(Error::UnboundedValue { state: trapped[0] });
                }
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        let (_, improved) = bellman_from(view, &values, Some(&policy));
        if improved == policy {
            return Ok(Some((values, policy)));
        }
        policy = improved;
    }
    Ok(None)
}

fn bellman(view: &MdpView, values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    bellman_from(view, values, None)
}

/// Bellman backup with lowest-index tie breaking. When `incumbent` is given,
/// its action is kept unless another is better by more than rounding noise,
/// so policy iteration cannot cycle on ties.
fn bellman_from(view: &MdpView, values: &[f64], incumbent: Option<&[usize]>) -> (Vec<f64>, Vec<usize>) {
    let n = view.n_states();
    let alpha = view.discount();
    let orient = view.orientation();
    let mut out = vec![0.0; n];
    let mut actions = vec![0; n];
    for x in 0..n {
        if view.is_terminal(x) {
            continue;
        }
        let q = |a: usize| view.cost(x, a) + alpha * view.expected(x, a, values);
        let (mut best_a, mut best) = match incumbent {
            Some(pol) => (pol[x], q(pol[x])),
            None => (0, q(0)),
        };
        for a in 0..view.n_actions(x) {
            if a == best_a {
                continue;
            }
            let cand = q(a);
            let slack = 1e-12 * (1.0 + best.abs());
            let better = match orient {
                Orientation::Max => cand > best + slack,
                Orientation::Min => cand < best - slack,
            };
            let tie_lower = (cand - best).abs() <= slack && a < best_a && incumbent.is_none();
            if better || tie_lower {
                best_a = a;
                best = cand;
            }
        }
        out[x] = best;
        actions[x] = best_a;
    }
    (out, actions)
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{heuristic_column_policy, two_period_matrix_game, waste_inspection_game, WasteGameConfig};

    #[test]
    fn response_to_nu_hat() {
        let g = two_period_matrix_game();
        let br = best_response(&g, &heuristic_column_policy(), Player::B, 1e-10).unwrap();
        assert!((br.values[0] - 5.6).abs() < 1e-9);
        assert_eq!(br.actions[0], 1);
        assert!((br.values[1] - 10.0).abs() < 1e-12);
        assert!((br.values[2] + 10.0).abs() < 1e-12);
    }

    #[test]
    fn pure_inspector_is_exploited() {
        let g = waste_inspection_game(&WasteGameConfig::with_sites(3)).unwrap();
        let counts = g.action_counts(Player::B).to_vec();
        let pure = MixedPolicy::pure(&vec![0; counts.len()], &counts);
        let err = best_response(&g, &pure, Player::B, 1e-10).unwrap_err();
        assert!(matches!(err, Error::UnboundedValue { .. }), "{err}");
    }

    #[test]
    fn bad_tolerance() {
        let g = two_period_matrix_game();
        assert!(best_response(&g, &heuristic_column_policy(), Player::B, 0.0).is_err());
    }
}
