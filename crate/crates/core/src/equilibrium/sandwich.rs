use serde::Serialize;

use super::{best_response, evaluate_policy_pair};
use crate::error::{Error, Result};
use crate::game::{GameModel, MixedPolicy, Player, ValueFunction};

const ORDER_TOL: f64 = 1e-7;

/// Interval `[J^{mu_hat}, J^{nu_hat}]` around the game value.
#[derive(Clone, Debug, Serialize)]
pub struct SandwichResult {
    /// B's best response to `mu_hat`.
    pub lower: ValueFunction,
    /// A's best response to `nu_hat`.
    pub upper: ValueFunction,
    pub pair_value: ValueFunction,
    pub lower_response: MixedPolicy,
    pub upper_response: MixedPolicy,
}

impl SandwichResult {
    pub fn gap(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }
}

pub fn sandwich(model: &GameModel, mu_hat: &MixedPolicy, nu_hat: &MixedPolicy, tol: f64) -> Result<SandwichResult> {
    let low = best_response(model, mu_hat, Player::A, tol)?;
    let up = best_response(model, nu_hat, Player::B, tol)?;
    let pair_value = evaluate_policy_pair(model, mu_hat, nu_hat)?;
    for i in 0..model.n_states() {
        let (l, p, u) = (low.values[i], pair_value[i], up.values[i]);
        if l > p + ORDER_TOL || p > u + ORDER_TOL {
            return Err(Error::SandwichViolated { state: i, lower: l, upper: u });
        }
    }
    Ok(SandwichResult {
        lower: low.values,
        upper: up.values,
        pair_value,
        lower_response: low.policy,
        upper_response: up.policy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::shapley_value_iteration;
    use crate::games::{heuristic_column_policy, two_period_matrix_game};

    #[test]
    fn nu_hat_interval() {
        let g = two_period_matrix_game();
        let star = shapley_value_iteration(&g, 1e-12, 100).unwrap();
        let s = sandwich(&g, &star.mu, &heuristic_column_policy(), 1e-10).unwrap();
        assert!((s.upper[0] - 5.6).abs() < 1e-9);
        assert!((s.lower[0] - 5.0).abs() < 1e-9);

        let s = sandwich(&g, &star.mu, &star.nu, 1e-10).unwrap();
        assert!((s.upper[0] - 5.0).abs() < 1e-9 && (s.lower[0] - 5.0).abs() < 1e-9);
        assert!(s.gap(0).abs() < 1e-9);
    }
}
