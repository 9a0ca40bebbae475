use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::game::{GameModel, MixedPolicy, Player, ValueFunction};

/// Exact cost-to-go `J^{mu,nu}` from the linear system `(I - alpha P) J = G`
/// over non-terminal states.
pub fn evaluate_policy_pair(model: &GameModel, mu: &MixedPolicy, nu: &MixedPolicy) -> Result<ValueFunction> {
    mu.validate_for(model, Player::A)?;
    nu.validate_for(model, Player::B)?;
    let n = model.n_states();
    let mut rows = Vec::with_capacity(n);
    let mut costs = Vec::with_capacity(n);
    for i in 0..n {
        rows.push(model.transition_mixed(i, mu.at(i), nu.at(i))?);
        costs.push(model.stage_cost_mixed(i, mu.at(i), nu.at(i))?);
    }
    solve_chain(&rows, &costs, model.discount(), model.terminal())
}

/// Solves the evaluation equations of a Markov reward chain. With a terminal
/// state the chain must reach it from everywhere, otherwise the state that
/// cannot is reported as [`Error::ImproperPair`].
pub(crate) fn solve_chain(
    rows: &[Vec<f64>],
    costs: &[f64],
    alpha: f64,
    terminal: Option<usize>,
) -> Result<ValueFunction> {
    let n = rows.len();
    if let Some(t) = terminal {
        if let Some(state) = trapped_states(rows, t).first() {
            return Err(Error::ImproperPair { state: *state });
        }
    }
    let live: Vec<usize> = (0..n).filter(|&i| Some(i) != terminal).collect();
    let mut pos = vec![usize::MAX; n];
    for (k, &i) in live.iter().enumerate() {
        pos[i] = k;
    }
    let size = live.len();
    let mut a = DMatrix::<f64>::identity(size, size);
    let b = DVector::from_iterator(size, live.iter().map(|&i| costs[i]));
    for (r, &i) in live.iter().enumerate() {
        for (j, &p) in rows[i].iter().enumerate() {
            if p != 0.0 && pos[j] != usize::MAX {
                a[(r, pos[j])] -= alpha * p;
            }
        }
    }
    let sol = a.lu().solve(&b).ok_or(Error::Singular)?;
    if sol.iter().any(|x| !x.is_finite()) {
        return Err(Error::Singular);
    }
    let mut values = vec![0.0; n];
    for (k, &i) in live.iter().enumerate() {
        values[i] = sol[k];
    }
    Ok(ValueFunction(values))
}

/// States from which `terminal` is unreachable in the graph of positive
/// transition probabilities, in ascending order.
pub(crate) fn trapped_states(rows: &[Vec<f64>], terminal: usize) -> Vec<usize> {
    let n = rows.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, row) in rows.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            if p > 0.0 && i != j {
                preds[j].push(i);
            }
        }
    }
    let mut reaches = vec![false; n];
    reaches[terminal] = true;
    let mut stack = vec![terminal];
    while let Some(j) = stack.pop() {
        for &i in &preds[j] {
            if !reaches[i] {
                reaches[i] = true;
                stack.push(i);
            }
        }
    }
    (0..n).filter(|&i| !reaches[i]).collect()
}
