//! Perfect-information relaxation of a time-embedded finite-horizon view.
//!
//! With the whole scenario revealed up front, the inner problem is a
//! deterministic shortest/longest path over `(period, state)`: the action
//! taken at `x` in period `t` moves to `inverse_cdf(p(.|x,a), w_{t+1})`.

use super::coupling::{inverse_cdf_transition, stream_rng, Scenario};
use super::estimate::{run, DualEstimate, McConfig};
use super::penalty::PenaltyGenerator;
use crate::error::{Error, Result};
use crate::game::{MdpView, Regime};

/// Largest product partition the enumeration oracle will integrate over.
pub const CELL_BUDGET: usize = 1_000_000;

/// Per-view data shared by every scenario.
struct InnerProblem<'a> {
    view: &'a MdpView,
    h: &'a PenaltyGenerator,
    /// States grouped by period.
    by_period: Vec<Vec<usize>>,
    /// `E[h(next) | x, a]`.
    expected_h: Vec<Vec<f64>>,
}

impl<'a> InnerProblem<'a> {
    fn new(view: &'a MdpView, h: &'a PenaltyGenerator) -> Result<Self> {
        let Regime::Embedded { periods, .. } = *view.regime() else {
            return Err(Error::WrongRegime { expected: "embedded finite-horizon" });
        };
        h.check(view)?;
        let mut by_period = vec![Vec::new(); periods];
        for x in 0..view.n_states() {
            if let Some(tag) = view.period_tag(x) {
                by_period[tag.period].push(x);
            }
        }
        Ok(InnerProblem { view, h, by_period, expected_h: h.expectations(view) })
    }

    fn horizon(&self) -> usize {
        self.by_period.len()
    }

    fn solve(&self, scenario: &Scenario) -> Result<f64> {
        if scenario.len() != self.horizon() {
            return Err(Error::HorizonMismatch { expected: self.horizon(), got: scenario.len() });
        }
        let view = self.view;
        let orient = view.orientation();
        let mut value = vec![0.0; view.n_states()];
        for t in (0..self.horizon()).rev() {
            let w = scenario.at(t);
            for &x in &self.by_period[t] {
                let mut best = orient.worst();
                for a in 0..view.n_actions(x) {
                    let next = inverse_cdf_transition(view.kernel(x, a), w);
                    let penalty = self.expected_h[x][a] - self.h.at(next);
                    let cand = view.cost(x, a) + penalty + value[next];
                    if orient.improves(cand, best) {
                        best = cand;
                    }
                }
                value[x] = best;
            }
        }
        Ok(value[view.initial_state()])
    }
}

/// Inner (dual) value of one scenario from the view's initial state.
pub fn pi_inner_finite(view: &MdpView, scenario: &Scenario, h: &PenaltyGenerator) -> Result<f64> {
    InnerProblem::new(view, h)?.solve(scenario)
}

/// Exact expectation of the inner value over uniform scenarios.
///
/// Under the inverse-CDF coupling the inner value is constant on each cell
/// of the product of per-period partitions cut at every cumulative
/// probability of every row in that period, so integrating cell midpoints
/// weighted by cell volume is exact.
pub fn exact_dual_bound_enumeration(view: &MdpView, h: &PenaltyGenerator) -> Result<f64> {
    let inner = InnerProblem::new(view, h)?;
    let partitions: Vec<Vec<(f64, f64)>> = inner
        .by_period
        .iter()
        .map(|states| period_cells(view, states))
        .collect();
    let cells: f64 = partitions.iter().map(|p| p.len() as f64).product();
    if cells > CELL_BUDGET as f64 {
        return Err(Error::CellBudgetExceeded { cells, budget: CELL_BUDGET });
    }
    let horizon = partitions.len();
    let mut odometer = vec![0usize; horizon];
    let mut total = 0.0;
    loop {
        let mut w = Vec::with_capacity(horizon);
        let mut weight = 1.0;
        for (t, &k) in odometer.iter().enumerate() {
            let (lo, hi) = partitions[t][k];
            // the midpoint of a cell ending at 1 can round up to 1
            w.push((0.5 * (lo + hi)).min(1.0 - f64::EPSILON / 2.0));
            weight *= hi - lo;
        }
        total += weight * inner.solve(&Scenario::new(w)?)?;
        let mut t = 0;
        loop {
            if t == horizon {
                return Ok(total);
            }
            odometer[t] += 1;
            if odometer[t] < partitions[t].len() {
                break;
            }
            odometer[t] = 0;
            t += 1;
        }
    }
}

fn period_cells(view: &MdpView, states: &[usize]) -> Vec<(f64, f64)> {
    let mut cuts = vec![0.0, 1.0];
    for &x in states {
        for a in 0..view.n_actions(x) {
            let mut acc = 0.0;
            for &p in view.kernel(x, a) {
                acc += p;
                if acc > 0.0 && acc < 1.0 {
                    cuts.push(acc);
                }
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2).map(|c| (c[0], c[1])).filter(|(lo, hi)| hi > lo).collect()
}

/// Monte Carlo mean of [`pi_inner_finite`] over `cfg.n` seeded scenarios.
/// Upper bound on the view's value for a max view, lower bound for a min view.
pub fn estimate_dual_bound_finite(view: &MdpView, h: &PenaltyGenerator, cfg: &McConfig) -> Result<DualEstimate> {
    let inner = InnerProblem::new(view, h)?;
    let horizon = inner.horizon();
    run(cfg, |k| {
        let mut rng = stream_rng(cfg.seed, k);
        inner.solve(&Scenario::draw(horizon, &mut rng))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{heuristic_generator, heuristic_column_policy, two_period_matrix_game};
    use crate::Player;

    fn view() -> MdpView {
        two_period_matrix_game().fix_player(&heuristic_column_policy(), Player::B).unwrap()
    }

    fn exact_h() -> PenaltyGenerator {
        PenaltyGenerator::new(vec![0.0, 10.0, -10.0, 0.0])
    }

    #[test]
    fn exact_generator_is_pathwise_tight() {
        let v = view();
        for w in [0.0, 0.1, 0.43, 0.44, 0.5, 0.64, 0.9, 0.999] {
            let s = Scenario::new(vec![w, 0.5]).unwrap();
            assert!((pi_inner_finite(&v, &s, &exact_h()).unwrap() - 5.6).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_generator_high_uniform() {
        // both actions land in (t1, R3): max(1.6, 6.8) - 10
        let s = Scenario::new(vec![0.99, 0.3]).unwrap();
        let v = pi_inner_finite(&view(), &s, &PenaltyGenerator::zero(4)).unwrap();
        assert!((v + 3.2).abs() < 1e-12);
    }

    #[test]
    fn horizon_checked() {
        let s = Scenario::new(vec![0.5]).unwrap();
        assert!(matches!(
            pi_inner_finite(&view(), &s, &heuristic_generator()),
            Err(Error::HorizonMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn enumeration_with_exact_generator() {
        let g = exact_dual_bound_enumeration(&view(), &exact_h()).unwrap();
        assert!((g - 5.6).abs() < 1e-12);
    }
}
