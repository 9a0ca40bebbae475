//! Constructors for the two worked examples: a two-period dynamic matrix
//! game and the industrial-waste inspection game.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameModel, MixedPolicy, Player, Regime};
use crate::relax::PenaltyGenerator;

const R1: [[f64; 2]; 2] = [[2.0, 1.0], [6.0, 8.0]];
const R2: [[f64; 2]; 2] = [[8.0, 15.0], [10.0, 12.0]];
const R3: [[f64; 2]; 2] = [[-8.0, -10.0], [3.0, -11.0]];
const P12: [[f64; 2]; 2] = [[0.7, 0.55], [0.4, 0.5]];
const P13: [[f64; 2]; 2] = [[0.3, 0.45], [0.6, 0.5]];

/// The two-period game on its original three states (0-based: the game
/// `R^(x)` is state `x-1`), before time embedding. The period-1 games carry
/// dummy self-loops that the embedding replaces with the terminal state.
pub fn two_period_matrix_game_raw() -> GameModel {
    let mut transition = Vec::new();
    let mut cost = Vec::new();
    let root_p = (0..2)
        .map(|u| (0..2).map(|v| vec![0.0, P12[u][v], P13[u][v]]).collect())
        .collect();
    transition.push(root_p);
    cost.push(payoff_tensor(&R1));
    for (s, r) in [(1, &R2), (2, &R3)] {
        let mut row = vec![0.0; 3];
        row[s] = 1.0;
        transition.push(vec![vec![row.clone(); 2]; 2]);
        cost.push(payoff_tensor(r));
    }
    GameModel::new(Regime::FiniteHorizon { periods: 2 }, vec![2; 3], vec![2; 3], transition, cost, 0)
        .expect("two-period game is well formed")
}

fn payoff_tensor(r: &[[f64; 2]; 2]) -> Vec<Vec<Vec<f64>>> {
    r.iter().map(|row| row.iter().map(|&x| vec![x; 3]).collect()).collect()
}

/// Time-embedded two-period game with states
/// `0 = (t0, R1)`, `1 = (t1, R2)`, `2 = (t1, R3)`, `3 = terminal`.
pub fn two_period_matrix_game() -> GameModel {
    two_period_matrix_game_raw()
        .embed_finite_horizon()
        .expect("two-period game embeds")
}

/// B's policy `nu_hat`: `[0.6, 0.4]` at the root and the equilibrium
/// columns in period 1.
pub fn heuristic_column_policy() -> MixedPolicy {
    MixedPolicy::new(vec![vec![0.6, 0.4], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0]]).expect("valid policy")
}

/// Generator `8 on (t1, R2)`, `-8 on (t1, R3)`, zero elsewhere: the period-1
/// value when both players always pick their first action.
pub fn heuristic_generator() -> PenaltyGenerator {
    PenaltyGenerator::new(vec![0.0, 8.0, -8.0, 0.0])
}

pub fn uniform_policy(model: &GameModel, player: Player) -> MixedPolicy {
    MixedPolicy::uniform(model.action_counts(player))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WasteGameConfig {
    pub sites: usize,
    /// Site coordinates on a line; distances are absolute differences.
    pub positions: Vec<f64>,
    /// Worst-case detection probability (sites far from last night's).
    pub p_low: f64,
    /// Ideal detection probability (same sites as last night).
    pub p_high: f64,
    pub k1: f64,
    pub k2: f64,
}

impl WasteGameConfig {
    /// Equally spaced sites `1..=n` with the reference parameters
    /// `p_low = 0.5`, `p_high = 0.95`, `k1 = 2`, `k2 = 1`.
    pub fn with_sites(n: usize) -> Self {
        WasteGameConfig {
            sites: n,
            positions: (1..=n).map(|i| i as f64).collect(),
            p_low: 0.5,
            p_high: 0.95,
            k1: 2.0,
            k2: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(format!("waste game: {m}")));
        if self.sites < 2 {
            return bad("need at least two sites");
        }
        if self.positions.len() != self.sites || self.positions.iter().any(|x| !x.is_finite()) {
            return bad("one finite position per site required");
        }
        if !(0.0 < self.p_low && self.p_low < self.p_high && self.p_high < 1.0) {
            return bad("need 0 < p_low < p_high < 1");
        }
        if !(self.k1 > 0.0 && self.k2 > 0.0) {
            return bad("weights must be positive");
        }
        if self.max_distance() == 0.0 {
            return bad("sites must not all coincide");
        }
        Ok(())
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        (self.positions[a] - self.positions[b]).abs()
    }

    pub fn max_distance(&self) -> f64 {
        let lo = self.positions.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.positions.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    }

    pub fn n_states(&self) -> usize {
        self.sites * self.sites + self.sites + 1
    }

    /// Index of the non-absorbing state `(prev_dump, prev_inspect, caught)`;
    /// `caught` requires equal sites.
    pub fn state_index(&self, dump: usize, inspect: usize, caught: bool) -> usize {
        let n = self.sites;
        if caught {
            assert_eq!(dump, inspect, "caught states need matching sites");
            n * n + dump
        } else {
            dump * n + inspect
        }
    }

    /// Inverse of [`WasteGameConfig::state_index`]; `None` for the absorbing state.
    pub fn state_of(&self, index: usize) -> Option<(usize, usize, bool)> {
        let n = self.sites;
        if index < n * n {
            Some((index / n, index % n, false))
        } else if index < n * n + n {
            let d = index - n * n;
            Some((d, d, true))
        } else {
            None
        }
    }

    pub fn absorbing(&self) -> usize {
        self.sites * self.sites + self.sites
    }
}

/// Probability that dumping at `dump` is detected while inspecting `inspect`,
/// given last night's sites.
pub fn detection_probability(
    cfg: &WasteGameConfig,
    prev_dump: usize,
    prev_inspect: usize,
    dump: usize,
    inspect: usize,
) -> f64 {
    if dump != inspect {
        return 0.0;
    }
    let slope = (cfg.p_low - cfg.p_high) / ((cfg.k1 + cfg.k2) * cfg.max_distance());
    let p = cfg.p_high + slope * (cfg.k1 * cfg.distance(dump, prev_dump) + cfg.k2 * cfg.distance(inspect, prev_inspect));
    p.clamp(cfg.p_low, cfg.p_high)
}

/// Waste-inspection game as an SSP: A (manufacturer) maximizes nights in
/// business, B (inspector) minimizes them. Every night costs 1. Two
/// consecutive detections send the game to the absorbing state. The initial
/// state is `(l1, l1, not caught)`.
pub fn waste_inspection_game(cfg: &WasteGameConfig) -> Result<GameModel> {
    cfg.validate()?;
    let n = cfg.sites;
    let total = cfg.n_states();
    let absorbing = cfg.absorbing();
    let mut transition = Vec::with_capacity(total);
    let mut cost = Vec::with_capacity(total);
    for i in 0..total {
        let Some((pd, pi, caught)) = cfg.state_of(i) else {
            let mut row = vec![0.0; total];
            row[absorbing] = 1.0;
            transition.push(vec![vec![row; n]; n]);
            cost.push(vec![vec![vec![0.0; total]; n]; n]);
            continue;
        };
        let mut p_i = Vec::with_capacity(n);
        for u in 0..n {
            let mut p_u = Vec::with_capacity(n);
            for v in 0..n {
                let mut row = vec![0.0; total];
                let pdet = detection_probability(cfg, pd, pi, u, v);
                let missed = cfg.state_index(u, v, false);
                if pdet > 0.0 {
                    let hit = if caught { absorbing } else { cfg.state_index(u, v, true) };
                    row[hit] = pdet;
                    row[missed] = 1.0 - pdet;
                } else {
                    row[missed] = 1.0;
                }
                p_u.push(row);
            }
            p_i.push(p_u);
        }
        transition.push(p_i);
        cost.push(vec![vec![vec![1.0; total]; n]; n]);
    }
    GameModel::new(Regime::Ssp { absorbing }, vec![n; total], vec![n; total], transition, cost, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detection_formula() {
        let cfg = WasteGameConfig::with_sites(10);
        assert_eq!(detection_probability(&cfg, 0, 0, 3, 4), 0.0);
        assert!((detection_probability(&cfg, 2, 2, 2, 2) - 0.95).abs() < 1e-15);
        assert!((detection_probability(&cfg, 0, 0, 9, 9) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn detection_stays_in_band() {
        let cfg = WasteGameConfig::with_sites(5);
        for pd in 0..5 {
            for pi in 0..5 {
                for s in 0..5 {
                    let p = detection_probability(&cfg, pd, pi, s, s);
                    assert!(p >= cfg.p_low - 1e-12 && p <= cfg.p_high + 1e-12);
                }
            }
        }
    }

    #[test]
    fn state_count_and_layout() {
        for n in [2, 3, 5, 10] {
            let cfg = WasteGameConfig::with_sites(n);
            let g = waste_inspection_game(&cfg).unwrap();
            assert_eq!(g.n_states(), n * n + n + 1);
            assert!(g.validate().is_empty());
            for i in 0..cfg.absorbing() {
                let (d, s, c) = cfg.state_of(i).unwrap();
                assert_eq!(cfg.state_index(d, s, c), i);
            }
        }
    }

    #[test]
    fn caught_twice_absorbs() {
        let cfg = WasteGameConfig::with_sites(10);
        let g = waste_inspection_game(&cfg).unwrap();
        let from = cfg.state_index(0, 0, true);
        let row = g.transition(from, 0, 0);
        assert!((row[cfg.absorbing()] - 0.95).abs() < 1e-15);
        let row = g.transition(cfg.state_index(4, 7, false), 2, 5);
        assert_eq!(row[cfg.state_index(2, 5, false)], 1.0);
    }

    #[test]
    fn config_rejected() {
        let mut cfg = WasteGameConfig::with_sites(3);
        cfg.p_low = 0.99;
        assert!(waste_inspection_game(&cfg).is_err());
        assert!(WasteGameConfig::with_sites(1).validate().is_err());
    }

    #[test]
    fn heuristic_objects() {
        let h = heuristic_generator();
        assert_eq!(h.values(), &[0.0, 8.0, -8.0, 0.0]);
        let g = two_period_matrix_game();
        heuristic_column_policy().validate_for(&g, Player::B).unwrap();
        assert_eq!(uniform_policy(&g, Player::A).at(0), &[0.5, 0.5]);
    }
}
