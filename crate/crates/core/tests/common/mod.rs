//! Random instances and independent reference computations shared by the
//! integration suites. Nothing here calls the library's solvers.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zsg_duality::{GameModel, MixedPolicy, Player, Regime};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, m: usize, n: usize) -> Vec<Vec<f64>> {
    (0..m).map(|_| (0..n).map(|_| rng.random_range(-10.0..10.0)).collect()).collect()
}

pub fn random_simplex(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Row payoff of the pure strategy pair.
pub fn bilinear(r: &[Vec<f64>], y: &[f64], z: &[f64]) -> f64 {
    let mut s = 0.0;
    for (u, row) in r.iter().enumerate() {
        for (v, x) in row.iter().enumerate() {
            s += y[u] * z[v] * x;
        }
    }
    s
}

/// Worst payoff the row strategy can get and best payoff the column
/// strategy can concede.
pub fn guarantees(r: &[Vec<f64>], y: &[f64], z: &[f64]) -> (f64, f64) {
    let m = r.len();
    let n = r[0].len();
    let row_floor = (0..n).map(|v| (0..m).map(|u| y[u] * r[u][v]).sum::<f64>()).fold(f64::INFINITY, f64::min);
    let col_ceiling = (0..m).map(|u| (0..n).map(|v| z[v] * r[u][v]).sum::<f64>()).fold(f64::NEG_INFINITY, f64::max);
    (row_floor, col_ceiling)
}

/// Value of a 2x2 zero-sum game (row maximizes) by support enumeration.
pub fn value_2x2(r: &[Vec<f64>]) -> f64 {
    for u in 0..2 {
        for v in 0..2 {
            let x = r[u][v];
            let row_min = x <= r[u][1 - v];
            let col_max = x >= r[1 - u][v];
            if row_min && col_max {
                return x;
            }
        }
    }
    let (a, b, c, d) = (r[0][0], r[0][1], r[1][0], r[1][1]);
    (a * d - b * c) / (a + d - b - c)
}

/// Which kind of random game to build.
#[derive(Clone, Copy, Debug)]
pub enum Kind {
    Discounted(f64),
    /// Last state absorbing; every other row reaches it with probability >= 0.2.
    Ssp,
    FiniteHorizon(usize),
}

pub fn random_game(rng: &mut impl Rng, kind: Kind, n_states: usize, max_actions: usize) -> GameModel {
    let n = n_states;
    let absorbing = matches!(kind, Kind::Ssp).then_some(n - 1);
    let mut actions_a = Vec::new();
    let mut actions_b = Vec::new();
    let mut transition = Vec::new();
    let mut cost = Vec::new();
    for i in 0..n {
        let (ma, mb) = if Some(i) == absorbing {
            (1, 1)
        } else {
            (rng.random_range(1..=max_actions), rng.random_range(1..=max_actions))
        };
        actions_a.push(ma);
        actions_b.push(mb);
        let mut p_i = Vec::new();
        let mut g_i = Vec::new();
        for _ in 0..ma {
            let mut p_u = Vec::new();
            let mut g_u = Vec::new();
            for _ in 0..mb {
                let (p, g) = match absorbing {
                    Some(abs) if abs == i => {
                        let mut p = vec![0.0; n];
                        p[abs] = 1.0;
                        (p, vec![0.0; n])
                    }
                    Some(abs) => {
                        let mut p: Vec<f64> = random_simplex(rng, n).into_iter().map(|x| 0.8 * x).collect();
                        p[abs] += 0.2;
                        let mut g: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
                        g[abs] = rng.random_range(-5.0..5.0);
                        (p, g)
                    }
                    None => {
                        // sparse rows exercise zero-probability branches
                        let mut p = random_simplex(rng, n);
                        if n > 2 && rng.random_bool(0.3) {
                            let k = rng.random_range(0..n);
                            let mass = p[k];
                            p[k] = 0.0;
                            p[(k + 1) % n] += mass;
                        }
                        (p, (0..n).map(|_| rng.random_range(-5.0..5.0)).collect())
                    }
                };
                p_u.push(p);
                g_u.push(g);
            }
            p_i.push(p_u);
            g_i.push(g_u);
        }
        transition.push(p_i);
        cost.push(g_i);
    }
    let regime = match kind {
        Kind::Discounted(alpha) => Regime::Discounted { alpha },
        Kind::Ssp => Regime::Ssp { absorbing: n - 1 },
        Kind::FiniteHorizon(periods) => Regime::FiniteHorizon { periods },
    };
    GameModel::new(regime, actions_a, actions_b, transition, cost, 0).expect("random game is valid")
}

pub fn random_policy(rng: &mut impl Rng, model: &GameModel, player: Player) -> MixedPolicy {
    let counts = model.action_counts(player);
    MixedPolicy::new(counts.iter().map(|&m| random_simplex(rng, m)).collect()).unwrap()
}

pub fn sample(rng: &mut impl Rng, p: &[f64]) -> usize {
    let w: f64 = rng.random();
    let mut acc = 0.0;
    for (k, &x) in p.iter().enumerate() {
        acc += x;
        if w < acc {
            return k;
        }
    }
    p.iter().rposition(|&x| x > 0.0).unwrap()
}

/// Monte Carlo rollout of `(mu, nu)` from `x0`: mean and standard error of
/// the realised total cost. Discounting is simulated by stopping with
/// probability `1 - alpha` after each step.
pub fn rollout(model: &GameModel, mu: &MixedPolicy, nu: &MixedPolicy, x0: usize, n: usize, seed: u64) -> (f64, f64) {
    let mut r = rng(seed);
    let (alpha, horizon) = match *model.regime() {
        Regime::Discounted { alpha } => (alpha, usize::MAX),
        Regime::FiniteHorizon { periods } => (1.0, periods),
        _ => (1.0, usize::MAX),
    };
    let mut totals = Vec::with_capacity(n);
    for _ in 0..n {
        let mut x = x0;
        let mut total = 0.0;
        let mut t = 0;
        while t < horizon && !model.is_terminal(x) {
            let u = sample(&mut r, mu.at(x));
            let v = sample(&mut r, nu.at(x));
            let j = sample(&mut r, model.transition(x, u, v));
            total += model.cost(x, u, v, j);
            x = j;
            t += 1;
            if alpha < 1.0 && r.random::<f64>() >= alpha {
                break;
            }
        }
        totals.push(total);
    }
    mean_se(&totals)
}

pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Exact `T`-period value of a stationary pair on a raw finite-horizon game
/// by backward recursion.
pub fn finite_pair_value(model: &GameModel, mu: &MixedPolicy, nu: &MixedPolicy) -> Vec<f64> {
    let Regime::FiniteHorizon { periods } = *model.regime() else { panic!("finite horizon only") };
    let n = model.n_states();
    let mut v = vec![0.0; n];
    for _ in 0..periods {
        let mut next = vec![0.0; n];
        for (i, slot) in next.iter_mut().enumerate() {
            for u in 0..model.actions_a(i) {
                for w in 0..model.actions_b(i) {
                    let pr = mu.at(i)[u] * nu.at(i)[w];
                    for (j, &p) in model.transition(i, u, w).iter().enumerate() {
                        *slot += pr * p * (model.cost(i, u, w, j) + v[j]);
                    }
                }
            }
        }
        v = next;
    }
    v
}
