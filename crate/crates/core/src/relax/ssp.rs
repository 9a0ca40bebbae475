//! Weak-form duals for views with an absorbing state.
//!
//! Paths are simulated under an action-independent reference kernel `q` and
//! the inner recursion reweights each step by `rho_t(a) = p(x_{t+1}|x_t,a) /
//! q(x_{t+1}|x_t)`:
//!
//! ```text
//! W_tau = 0
//! W_t   = opt_a [ c(x_t,a) + E[h | x_t,a] - rho_t(a) h(x_{t+1}) + rho_t(a) W_{t+1} ]
//! ```
//!
//! With `h` equal to the view's optimal value the bracket reduces to the
//! Bellman backup and `W_0` equals that value on every path.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::coupling::{inverse_cdf_transition, stream_rng};
use super::estimate::{run, DualEstimate, McConfig};
use super::penalty::PenaltyGenerator;
use crate::equilibrium::trapped;
use crate::error::{Error, Result};
use crate::game::{check_simplex, GameModel, MdpView, SIMPLEX_TOL};

/// Default step cap for a single reference path.
pub const PATH_CAP: usize = 1_000_000;

/// Action-independent kernel used to generate dual sample paths.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceMeasure {
    rows: Vec<Vec<f64>>,
    absorbing: usize,
}

impl ReferenceMeasure {
    pub fn new(rows: Vec<Vec<f64>>, absorbing: usize) -> Result<Self> {
        let n = rows.len();
        if absorbing >= n {
            return Err(Error::Dimension(format!("absorbing state {absorbing} out of range")));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!("q row {x} has length {}, expected {n}", row.len())));
            }
            check_simplex(row, SIMPLEX_TOL).map_err(|m| Error::NotSimplex(format!("q row {x}: {m}")))?;
        }
        if (rows[absorbing][absorbing] - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::Config("reference measure must keep the absorbing state absorbing".into()));
        }
        if let Some(x) = trapped(&rows, absorbing).first() {
            return Err(Error::Config(format!("absorbing state unreachable under q from state {x}")));
        }
        Ok(ReferenceMeasure { rows, absorbing })
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }

    pub fn prob(&self, x: usize, next: usize) -> f64 {
        self.rows[x][next]
    }

    pub fn absorbing(&self) -> usize {
        self.absorbing
    }

    pub fn n_states(&self) -> usize {
        self.rows.len()
    }
}

/// From each non-absorbing state, equal mass on every state of the model,
/// the current state and the absorbing state included.
pub fn make_uniform_reference(model: &GameModel) -> Result<ReferenceMeasure> {
    let absorbing = model.terminal().ok_or(Error::WrongRegime { expected: "SSP" })?;
    let n = model.n_states();
    let rows = (0..n)
        .map(|x| {
            if x == absorbing {
                let mut r = vec![0.0; n];
                r[absorbing] = 1.0;
                r
            } else {
                vec![1.0 / n as f64; n]
            }
        })
        .collect();
    ReferenceMeasure::new(rows, absorbing)
}

/// A transition the view can make but `q` cannot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbsContinuityViolation {
    pub state: usize,
    pub action: usize,
    pub next: usize,
}

/// Every `(x, a, j)` with `p(j|x,a) > 0` and `q(j|x) = 0`.
pub fn validate_abs_continuity(view: &MdpView, q: &ReferenceMeasure) -> Vec<AbsContinuityViolation> {
    let mut out = Vec::new();
    for x in 0..view.n_states().min(q.n_states()) {
        if view.is_terminal(x) {
            continue;
        }
        for a in 0..view.n_actions(x) {
            for (j, &p) in view.kernel(x, a).iter().enumerate() {
                if p > 0.0 && q.prob(x, j) == 0.0 {
                    out.push(AbsContinuityViolation { state: x, action: a, next: j });
                }
            }
        }
    }
    out
}

/// Path `x_0, ..., x_tau` under `q` ending at the absorbing state. Uses
/// stream 0 of `seed`; the estimator uses stream `k` for path `k`.
pub fn simulate_q_path(q: &ReferenceMeasure, x0: usize, seed: u64, cap: usize) -> Result<Vec<usize>> {
    q_path(q, x0, &mut stream_rng(seed, 0), cap)
}

fn q_path(q: &ReferenceMeasure, x0: usize, rng: &mut impl Rng, cap: usize) -> Result<Vec<usize>> {
    let mut path = vec![x0];
    let mut x = x0;
    while x != q.absorbing() {
        if path.len() > cap {
            return Err(Error::PathCapExceeded(cap));
        }
        x = inverse_cdf_transition(q.row(x), rng.random::<f64>());
        path.push(x);
    }
    Ok(path)
}

struct WeakForm<'a> {
    view: &'a MdpView,
    q: &'a ReferenceMeasure,
    h: &'a PenaltyGenerator,
    expected_h: Vec<Vec<f64>>,
}

impl<'a> WeakForm<'a> {
    fn new(view: &'a MdpView, q: &'a ReferenceMeasure, h: &'a PenaltyGenerator) -> Result<Self> {
        if view.terminal() != Some(q.absorbing()) || view.discount() != 1.0 {
            return Err(Error::WrongRegime { expected: "SSP view matching the reference measure" });
        }
        if q.n_states() != view.n_states() {
            return Err(Error::Dimension("reference measure and view differ in size".into()));
        }
        h.check(view)?;
        Ok(WeakForm { view, q, h, expected_h: h.expectations(view) })
    }

    fn solve(&self, path: &[usize]) -> Result<f64> {
        let view = self.view;
        let orient = view.orientation();
        let mut w_next = 0.0;
        for t in (0..path.len().saturating_sub(1)).rev() {
            let (x, next) = (path[t], path[t + 1]);
            let qv = self.q.prob(x, next);
            if qv <= 0.0 {
                return Err(Error::Config(format!("path step {x} -> {next} has zero reference probability")));
            }
            let mut best = orient.worst();
            for a in 0..view.n_actions(x) {
                let rho = view.kernel(x, a)[next] / qv;
                // an action that cannot reach `next` drops the rest of the path, even if W is infinite
                let carried = if rho == 0.0 { 0.0 } else { rho * (w_next - self.h.at(next)) };
                let cand = view.cost(x, a) + self.expected_h[x][a] + carried;
                if orient.improves(cand, best) {
                    best = cand;
                }
            }
            w_next = best;
        }
        Ok(w_next)
    }
}

/// Inner value `W_0` of one reference path.
pub fn weak_form_inner_ssp(view: &MdpView, path: &[usize], q: &ReferenceMeasure, h: &PenaltyGenerator) -> Result<f64> {
    if path.last() != Some(&q.absorbing()) {
        return Err(Error::Config("path must end at the absorbing state".into()));
    }
    let mut seen = vec![false; view.n_states()];
    for &x in &path[..path.len() - 1] {
        if std::mem::replace(&mut seen[x], true) {
            continue;
        }
        for a in 0..view.n_actions(x) {
            if let Some(next) = view.kernel(x, a).iter().enumerate().position(|(j, &p)| p > 0.0 && q.prob(x, j) == 0.0) {
                return Err(Error::AbsContinuity { state: x, action: a, next });
            }
        }
    }
    WeakForm::new(view, q, h)?.solve(path)
}

/// Monte Carlo mean of [`weak_form_inner_ssp`] over `cfg.n` reference paths
/// from the view's initial state.
pub fn estimate_dual_bound_ssp(
    view: &MdpView,
    h: &PenaltyGenerator,
    q: &ReferenceMeasure,
    cfg: &McConfig,
) -> Result<DualEstimate> {
    if let Some(v) = validate_abs_continuity(view, q).first() {
        return Err(Error::AbsContinuity { state: v.state, action: v.action, next: v.next });
    }
    let inner = WeakForm::new(view, q, h)?;
    let x0 = view.initial_state();
    run(cfg, |k| {
        let path = q_path(q, x0, &mut stream_rng(cfg.seed, k), PATH_CAP)?;
        inner.solve(&path)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Orientation, Regime};

    fn chain_view(orientation: Orientation) -> MdpView {
        // 0 -> 1 -> 2 (absorbing), one action, costs 3 and 4
        let kernel = vec![
            vec![vec![0.0, 1.0, 0.0]],
            vec![vec![0.0, 0.0, 1.0]],
            vec![vec![0.0, 0.0, 1.0]],
        ];
        MdpView::from_mdp(orientation, Regime::Ssp { absorbing: 2 }, vec![vec![3.0], vec![4.0], vec![0.0]], kernel.clone(), 0, None)
            .unwrap()
    }

    #[test]
    fn deterministic_chain_with_q_equal_p() {
        let view = chain_view(Orientation::Min);
        let rows: Vec<Vec<f64>> = (0..3).map(|x| view.kernel(x, 0).to_vec()).collect();
        let q = ReferenceMeasure::new(rows, 2).unwrap();
        let path = simulate_q_path(&q, 0, 1, 10).unwrap();
        assert_eq!(path, vec![0, 1, 2]);
        let w = weak_form_inner_ssp(&view, &path, &q, &PenaltyGenerator::zero(3)).unwrap();
        assert_eq!(w, 7.0);
    }

    #[test]
    fn immediate_absorption_under_q() {
        let view = chain_view(Orientation::Min);
        let mut rows = vec![vec![0.0, 0.0, 1.0]; 3];
        rows[0] = vec![0.5, 0.5 - 1e-3, 1e-3];
        let q = ReferenceMeasure::new(rows, 2).unwrap();
        // rho = 0 for the only action, so only the stage cost survives
        let w = weak_form_inner_ssp(&view, &[0, 2], &q, &PenaltyGenerator::zero(3)).unwrap();
        assert_eq!(w, 3.0);
    }

    #[test]
    fn abs_continuity_listing() {
        let view = chain_view(Orientation::Max);
        let q = ReferenceMeasure::new(vec![vec![0.0, 0.0, 1.0]; 3], 2).unwrap();
        let v = validate_abs_continuity(&view, &q);
        assert_eq!(v, vec![AbsContinuityViolation { state: 0, action: 0, next: 1 }]);
        assert!(estimate_dual_bound_ssp(&view, &PenaltyGenerator::zero(3), &q, &McConfig::new(4, 0)).is_err());
    }

    #[test]
    fn two_state_uniform_reference() {
        let model = GameModel::new(
            Regime::Ssp { absorbing: 1 },
            vec![1, 1],
            vec![1, 1],
            vec![vec![vec![vec![0.5, 0.5]]], vec![vec![vec![0.0, 1.0]]]],
            vec![vec![vec![vec![1.0, 1.0]]], vec![vec![vec![0.0, 0.0]]]],
            0,
        )
        .unwrap();
        let q = make_uniform_reference(&model).unwrap();
        assert_eq!(q.row(0), &[0.5, 0.5]);
        assert_eq!(q.row(1), &[0.0, 1.0]);
    }

    #[test]
    fn path_cap() {
        let q = ReferenceMeasure::new(vec![vec![1.0 - 1e-9, 1e-9], vec![0.0, 1.0]], 1).unwrap();
        assert!(matches!(simulate_q_path(&q, 0, 3, 100), Err(Error::PathCapExceeded(100))));
    }

    #[test]
    fn rejects_non_absorbing_reference() {
        assert!(ReferenceMeasure::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]], 1).is_err());
    }
}
