use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{GameModel, MixedPolicy, Regime, ValueFunction};
use crate::matrix;

/// Lookahead matrix `Q[u][v] = sum_j p_ij(u,v) (g(i,u,v,j) + alpha J(j))`.
pub fn continuation_matrix(model: &GameModel, i: usize, values: &[f64]) -> Vec<Vec<f64>> {
    let alpha = model.discount();
    (0..model.actions_a(i))
        .map(|u| {
            (0..model.actions_b(i))
                .map(|v| {
                    model
                        .transition(i, u, v)
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| **p != 0.0)
                        .map(|(j, p)| p * (model.cost(i, u, v, j) + alpha * values[j]))
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// One application of the Shapley operator: every non-terminal state gets
/// the value of its lookahead matrix game. Returns the new values and the
/// per-state equilibrium strategies.
pub fn shapley_operator(model: &GameModel, values: &ValueFunction) -> Result<(ValueFunction, MixedPolicy, MixedPolicy)> {
    let solved: Vec<Option<matrix::MatrixGameSolution>> = (0..model.n_states())
        .into_par_iter()
        .map(|i| {
            if model.is_terminal(i) {
                Ok(None)
            } else {
                matrix::solve(&continuation_matrix(model, i, values.as_slice())).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    let mut next = Vec::with_capacity(solved.len());
    let mut mu = Vec::with_capacity(solved.len());
    let mut nu = Vec::with_capacity(solved.len());
    for (i, s) in solved.into_iter().enumerate() {
        match s {
            Some(s) => {
                next.push(s.value);
                mu.push(s.row_strategy);
                nu.push(s.col_strategy);
            }
            None => {
                next.push(0.0);
                mu.push(uniform(model.actions_a(i)));
                nu.push(uniform(model.actions_b(i)));
            }
        }
    }
    Ok((ValueFunction(next), MixedPolicy::new(mu)?, MixedPolicy::new(nu)?))
}

fn uniform(k: usize) -> Vec<f64> {
    vec![1.0 / k as f64; k]
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapleySolution {
    pub values: ValueFunction,
    pub mu: MixedPolicy,
    pub nu: MixedPolicy,
    pub iterations: usize,
    pub last_delta: f64,
}

/// Value iteration on the Shapley operator from `J = 0` until the sup-norm
/// change drops below `tol`. Finite-horizon games must be embedded first.
pub fn shapley_value_iteration(model: &GameModel, tol: f64, max_iter: usize) -> Result<ShapleySolution> {
    if matches!(model.regime(), Regime::FiniteHorizon { .. }) {
        return Err(Error::WrongRegime { expected: "discounted, SSP or embedded" });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
    }
    let mut values = ValueFunction::zeros(model.n_states());
    let mut last_delta = f64::INFINITY;
    for it in 1..=max_iter {
        let (next, mu, nu) = shapley_operator(model, &values)?;
        last_delta = next.sup_distance(&values);
        values = next;
        if last_delta < tol {
            return Ok(ShapleySolution { values, mu, nu, iterations: it, last_delta });
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, last_delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::evaluate_policy_pair;
    use crate::games::two_period_matrix_game;

    #[test]
    fn table_one() {
        let g = two_period_matrix_game();
        let s = shapley_value_iteration(&g, 1e-10, 100).unwrap();
        assert!((s.values[0] - 5.0).abs() < 1e-9);
        assert!((s.values[1] - 10.0).abs() < 1e-9);
        assert!((s.values[2] + 10.0).abs() < 1e-9);
        assert_eq!(s.values[3], 0.0);
        assert!((s.nu.at(0)[0] - 0.75).abs() < 1e-7);
    }

    #[test]
    fn continuation_at_root() {
        let g = two_period_matrix_game();
        let q = continuation_matrix(&g, 0, &[0.0, 10.0, -10.0, 0.0]);
        let want = [[6.0, 2.0], [4.0, 8.0]];
        for u in 0..2 {
            for v in 0..2 {
                assert!((q[u][v] - want[u][v]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_action_discounted_matches_linear_solve() {
        let model = GameModel::new(
            Regime::Discounted { alpha: 0.8 },
            vec![1, 1],
            vec![1, 1],
            vec![vec![vec![vec![0.3, 0.7]]], vec![vec![vec![0.5, 0.5]]]],
            vec![vec![vec![vec![1.0, 2.0]]], vec![vec![vec![-1.0, 0.0]]]],
            0,
        )
        .unwrap();
        let s = shapley_value_iteration(&model, 1e-12, 10_000).unwrap();
        let p = MixedPolicy::uniform(&[1, 1]);
        let exact = evaluate_policy_pair(&model, &p, &p).unwrap();
        assert!(s.values.sup_distance(&exact) < 1e-10);
    }

    #[test]
    fn unembedded_game_rejected() {
        let raw = crate::games::two_period_matrix_game_raw();
        assert!(matches!(shapley_value_iteration(&raw, 1e-9, 10), Err(Error::WrongRegime { .. })));
    }
}
