//! Data model for two-player zero-sum stochastic games.
//!
//! Player A picks a row `u`, player B a column `v`; the cost `g(i,u,v,j)` is
//! paid by B to A, so A maximizes and B minimizes the same total. States and
//! actions are dense 0-based indices and the transition tensor is stored as
//! one probability row per `(i, u, v)`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for row sums and simplex checks.
pub const SIMPLEX_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    /// Maximizer.
    A,
    /// Minimizer.
    B,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Min,
    Max,
}

impl Orientation {
    /// True when `candidate` is strictly better than `incumbent`.
    pub fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Orientation::Min => candidate < incumbent,
            Orientation::Max => candidate > incumbent,
        }
    }

    pub fn worst(self) -> f64 {
        match self {
            Orientation::Min => f64::INFINITY,
            Orientation::Max => f64::NEG_INFINITY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Regime {
    /// `periods` decision epochs; solved after [`GameModel::embed_finite_horizon`].
    FiniteHorizon { periods: usize },
    Discounted { alpha: f64 },
    /// Undiscounted with one absorbing, cost-free state.
    Ssp { absorbing: usize },
    /// Time-augmented finite-horizon game. `terminal` plays the role of the
    /// absorbing state, so the SSP code paths apply unchanged.
    Embedded { periods: usize, terminal: usize },
}

impl Regime {
    pub fn discount(&self) -> f64 {
        match self {
            Regime::Discounted { alpha } => *alpha,
            _ => 1.0,
        }
    }

    pub fn terminal(&self) -> Option<usize> {
        match self {
            Regime::Ssp { absorbing } => Some(*absorbing),
            Regime::Embedded { terminal, .. } => Some(*terminal),
            _ => None,
        }
    }

    pub fn horizon(&self) -> Option<usize> {
        match self {
            Regime::FiniteHorizon { periods } | Regime::Embedded { periods, .. } => Some(*periods),
            _ => None,
        }
    }
}

/// Period and original state index of a time-embedded state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodTag {
    pub period: usize,
    pub origin: usize,
}

/// One validation failure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub location: String,
    pub violation: String,
}

impl Diagnostic {
    fn new(location: impl Into<String>, violation: impl Into<String>) -> Self {
        Diagnostic { location: location.into(), violation: violation.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.violation)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameModel {
    n_states: usize,
    regime: Regime,
    actions_a: Vec<usize>,
    actions_b: Vec<usize>,
    /// `transition[i][u][v][j]`
    transition: Vec<Vec<Vec<Vec<f64>>>>,
    /// `cost[i][u][v][j]`
    cost: Vec<Vec<Vec<Vec<f64>>>>,
    #[serde(default)]
    initial_state: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period_tags: Option<Vec<Option<PeriodTag>>>,
}

impl GameModel {
    /// Builds a model and rejects it unless [`GameModel::validate`] is clean.
    pub fn new(
        regime: Regime,
        actions_a: Vec<usize>,
        actions_b: Vec<usize>,
        transition: Vec<Vec<Vec<Vec<f64>>>>,
        cost: Vec<Vec<Vec<Vec<f64>>>>,
        initial_state: usize,
    ) -> Result<Self> {
        let model = GameModel {
            n_states: actions_a.len(),
            regime,
            actions_a,
            actions_b,
            transition,
            cost,
            initial_state,
            period_tags: None,
        };
        model.checked()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: GameModel = serde_json::from_str(text)?;
        model.checked()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn checked(self) -> Result<Self> {
        let diagnostics = self.validate();
        if diagnostics.is_empty() {
            Ok(self)
        } else {
            Err(Error::Invalid(diagnostics))
        }
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn regime(&self) -> &Regime {
        &self.regime
    }

    pub fn discount(&self) -> f64 {
        self.regime.discount()
    }

    /// Absorbing (SSP) or terminal (embedded) state.
    pub fn terminal(&self) -> Option<usize> {
        self.regime.terminal()
    }

    pub fn is_terminal(&self, i: usize) -> bool {
        self.terminal() == Some(i)
    }

    pub fn initial_state(&self) -> usize {
        self.initial_state
    }

    pub fn actions_a(&self, i: usize) -> usize {
        self.actions_a[i]
    }

    pub fn actions_b(&self, i: usize) -> usize {
        self.actions_b[i]
    }

    pub fn action_counts(&self, player: Player) -> &[usize] {
        match player {
            Player::A => &self.actions_a,
            Player::B => &self.actions_b,
        }
    }

    pub fn transition(&self, i: usize, u: usize, v: usize) -> &[f64] {
        &self.transition[i][u][v]
    }

    pub fn cost(&self, i: usize, u: usize, v: usize, j: usize) -> f64 {
        self.cost[i][u][v][j]
    }

    pub fn period_tag(&self, i: usize) -> Option<PeriodTag> {
        self.period_tags.as_ref().and_then(|tags| tags[i])
    }

    /// Expected one-step cost of the pure pair `(u, v)` at `i`.
    pub fn pure_stage_cost(&self, i: usize, u: usize, v: usize) -> f64 {
        self.transition[i][u][v]
            .iter()
            .zip(&self.cost[i][u][v])
            .map(|(p, g)| p * g)
            .sum()
    }

    /// `G(i, y, z) = sum_u sum_v y_u z_v sum_j p_ij(u,v) g(i,u,v,j)`.
    pub fn stage_cost_mixed(&self, i: usize, y: &[f64], z: &[f64]) -> Result<f64> {
        self.check_mixed_args(i, y, z)?;
        let mut total = 0.0;
        for (u, &yu) in y.iter().enumerate() {
            for (v, &zv) in z.iter().enumerate() {
                total += yu * zv * self.pure_stage_cost(i, u, v);
            }
        }
        Ok(total)
    }

    /// Next-state distribution when both players randomize at `i`.
    pub fn transition_mixed(&self, i: usize, y: &[f64], z: &[f64]) -> Result<Vec<f64>> {
        self.check_mixed_args(i, y, z)?;
        let mut row = vec![0.0; self.n_states];
        for (u, &yu) in y.iter().enumerate() {
            for (v, &zv) in z.iter().enumerate() {
                let w = yu * zv;
                if w == 0.0 {
                    continue;
                }
                for (acc, p) in row.iter_mut().zip(&self.transition[i][u][v]) {
                    *acc += w * p;
                }
            }
        }
        Ok(row)
    }

    fn check_mixed_args(&self, i: usize, y: &[f64], z: &[f64]) -> Result<()> {
        if i >= self.n_states {
            return Err(Error::Dimension(format!("state {i} out of range 0..{}", self.n_states)));
        }
        if y.len() != self.actions_a[i] || z.len() != self.actions_b[i] {
            return Err(Error::Dimension(format!(
                "state {i} has {}x{} actions, got vectors of length {} and {}",
                self.actions_a[i],
                self.actions_b[i],
                y.len(),
                z.len()
            )));
        }
        check_simplex(y, SIMPLEX_TOL).map_err(|m| Error::NotSimplex(format!("y at state {i}: {m}")))?;
        check_simplex(z, SIMPLEX_TOL).map_err(|m| Error::NotSimplex(format!("z at state {i}: {m}")))?;
        Ok(())
    }

    /// Reduces the game to a one-player decision problem by averaging over
    /// the fixed player's mixed action. Fixing B leaves A maximizing; fixing
    /// A leaves B minimizing.
    pub fn fix_player(&self, fixed: &MixedPolicy, fixed_player: Player) -> Result<MdpView> {
        fixed.validate_for(self, fixed_player)?;
        let n = self.n_states;
        let mut cost = Vec::with_capacity(n);
        let mut kernel = Vec::with_capacity(n);
        for i in 0..n {
            let dist = fixed.at(i);
            let free = self.action_counts(fixed_player.opponent())[i];
            let mut c_row = Vec::with_capacity(free);
            let mut k_row = Vec::with_capacity(free);
            for a in 0..free {
                let mut c = 0.0;
                let mut p = vec![0.0; n];
                for (b, &w) in dist.iter().enumerate() {
                    if w == 0.0 {
                        continue;
                    }
                    let (u, v) = match fixed_player {
                        Player::B => (a, b),
                        Player::A => (b, a),
                    };
                    c += w * self.pure_stage_cost(i, u, v);
                    for (acc, q) in p.iter_mut().zip(&self.transition[i][u][v]) {
                        *acc += w * q;
                    }
                }
                c_row.push(c);
                k_row.push(p);
            }
            cost.push(c_row);
            kernel.push(k_row);
        }
        let orientation = match fixed_player {
            Player::B => Orientation::Max,
            Player::A => Orientation::Min,
        };
        Ok(MdpView {
            orientation,
            regime: self.regime.clone(),
            cost,
            kernel,
            initial_state: self.initial_state,
            period_tags: self.period_tags.clone(),
            fixed: Some((fixed_player, fixed.clone())),
        })
    }

    /// Turns a finite-horizon game into an undiscounted one on `(t, i)` pairs
    /// plus a terminal state. Only pairs reachable from the initial state are
    /// kept; the root `(0, initial)` gets index 0 and the terminal comes last.
    /// Decisions at period `T-1` lead to the terminal state and carry their
    /// expected stage cost.
    pub fn embed_finite_horizon(&self) -> Result<GameModel> {
        let periods = match self.regime {
            Regime::FiniteHorizon { periods } => periods,
            _ => return Err(Error::WrongRegime { expected: "finite-horizon" }),
        };
        if periods == 0 {
            return Err(Error::ZeroHorizon);
        }
        let mut levels: Vec<Vec<usize>> = vec![vec![self.initial_state]];
        for t in 1..periods {
            let mut next = BTreeSet::new();
            for &i in &levels[t - 1] {
                for u in 0..self.actions_a[i] {
                    for v in 0..self.actions_b[i] {
                        for (j, &p) in self.transition[i][u][v].iter().enumerate() {
                            if p > 0.0 {
                                next.insert(j);
                            }
                        }
                    }
                }
            }
            levels.push(next.into_iter().collect());
        }
        let mut index = vec![vec![usize::MAX; self.n_states]; periods];
        let mut tags = Vec::new();
        for (t, level) in levels.iter().enumerate() {
            for &i in level {
                index[t][i] = tags.len();
                tags.push(Some(PeriodTag { period: t, origin: i }));
            }
        }
        let terminal = tags.len();
        let n = terminal + 1;
        tags.push(None);

        let mut actions_a = Vec::with_capacity(n);
        let mut actions_b = Vec::with_capacity(n);
        let mut transition = Vec::with_capacity(n);
        let mut cost = Vec::with_capacity(n);
        for tag in tags.iter().take(terminal).flatten() {
            let (t, i) = (tag.period, tag.origin);
            actions_a.push(self.actions_a[i]);
            actions_b.push(self.actions_b[i]);
            let mut p_state = Vec::new();
            let mut g_state = Vec::new();
            for u in 0..self.actions_a[i] {
                let mut p_u = Vec::new();
                let mut g_u = Vec::new();
                for v in 0..self.actions_b[i] {
                    let mut p_row = vec![0.0; n];
                    let mut g_row = vec![0.0; n];
                    if t + 1 == periods {
                        p_row[terminal] = 1.0;
                        g_row[terminal] = self.pure_stage_cost(i, u, v);
                    } else {
                        for (j, &p) in self.transition[i][u][v].iter().enumerate() {
                            if p > 0.0 {
                                let k = index[t + 1][j];
                                p_row[k] = p;
                                g_row[k] = self.cost[i][u][v][j];
                            }
                        }
                    }
                    p_u.push(p_row);
                    g_u.push(g_row);
                }
                p_state.push(p_u);
                g_state.push(g_u);
            }
            transition.push(p_state);
            cost.push(g_state);
        }
        actions_a.push(1);
        actions_b.push(1);
        let mut self_loop = vec![0.0; n];
        self_loop[terminal] = 1.0;
        transition.push(vec![vec![self_loop]]);
        cost.push(vec![vec![vec![0.0; n]]]);

        GameModel {
            n_states: n,
            regime: Regime::Embedded { periods, terminal },
            actions_a,
            actions_b,
            transition,
            cost,
            initial_state: 0,
            period_tags: Some(tags),
        }
        .checked()
    }

    /// Lists every violated model invariant; empty means well formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let n = self.n_states;
        if n == 0 {
            out.push(Diagnostic::new("model", "no states"));
            return out;
        }
        if self.actions_a.len() != n || self.actions_b.len() != n {
            out.push(Diagnostic::new(
                "actions",
                format!(
                    "expected {n} entries, got {} (A) and {} (B)",
                    self.actions_a.len(),
                    self.actions_b.len()
                ),
            ));
            return out;
        }
        if self.transition.len() != n || self.cost.len() != n {
            out.push(Diagnostic::new("transition/cost", format!("expected {n} states")));
            return out;
        }
        if self.initial_state >= n {
            out.push(Diagnostic::new("initial_state", "out of range"));
        }
        for i in 0..n {
            let (na, nb) = (self.actions_a[i], self.actions_b[i]);
            if na == 0 || nb == 0 {
                out.push(Diagnostic::new(format!("state {i}"), "empty action set"));
                continue;
            }
            if self.transition[i].len() != na
                || self.cost[i].len() != na
                || self.transition[i].iter().any(|r| r.len() != nb)
                || self.cost[i].iter().any(|r| r.len() != nb)
            {
                out.push(Diagnostic::new(format!("state {i}"), "tensor shape does not match action counts"));
                continue;
            }
            for u in 0..na {
                for v in 0..nb {
                    let loc = format!("(i={i}, u={u}, v={v})");
                    let row = &self.transition[i][u][v];
                    let g = &self.cost[i][u][v];
                    if row.len() != n || g.len() != n {
                        out.push(Diagnostic::new(loc, format!("row length must be {n}")));
                        continue;
                    }
                    if let Err(msg) = check_simplex(row, SIMPLEX_TOL) {
                        out.push(Diagnostic::new(loc.clone(), msg));
                    }
                    if g.iter().any(|c| !c.is_finite()) {
                        out.push(Diagnostic::new(loc, "non-finite cost"));
                    }
                }
            }
        }
        match self.regime {
            Regime::FiniteHorizon { periods: 0 } => {
                out.push(Diagnostic::new("regime", "horizon must be at least 1"));
            }
            Regime::Discounted { alpha } if !(alpha > 0.0 && alpha < 1.0) => {
                out.push(Diagnostic::new("regime", format!("discount {alpha} outside (0,1)")));
            }
            Regime::Ssp { absorbing: s } | Regime::Embedded { terminal: s, .. } => {
                if s >= n {
                    out.push(Diagnostic::new("regime", format!("absorbing state {s} out of range")));
                } else {
                    self.check_absorbing(s, &mut out);
                    if self.initial_state == s {
                        out.push(Diagnostic::new("initial_state", "is the absorbing state"));
                    }
                }
            }
            _ => {}
        }
        if let Regime::Embedded { periods, terminal } = self.regime {
            self.check_period_tags(periods, terminal, &mut out);
        }
        out
    }

    fn check_absorbing(&self, s: usize, out: &mut Vec<Diagnostic>) {
        for u in 0..self.transition[s].len() {
            for v in 0..self.transition[s][u].len() {
                let row = &self.transition[s][u][v];
                let g = &self.cost[s][u][v];
                if row.len() != self.n_states || g.len() != self.n_states {
                    continue;
                }
                if (row[s] - 1.0).abs() > SIMPLEX_TOL {
                    out.push(Diagnostic::new(
                        format!("(i={s}, u={u}, v={v})"),
                        "absorbing state must self-transition with probability 1",
                    ));
                }
                if g[s] != 0.0 {
                    out.push(Diagnostic::new(
                        format!("(i={s}, u={u}, v={v})"),
                        format!("absorbing state has nonzero cost {}", g[s]),
                    ));
                }
            }
        }
    }

    fn check_period_tags(&self, periods: usize, terminal: usize, out: &mut Vec<Diagnostic>) {
        let Some(tags) = &self.period_tags else {
            out.push(Diagnostic::new("period_tags", "embedded model without period tags"));
            return;
        };
        if tags.len() != self.n_states {
            out.push(Diagnostic::new("period_tags", "length does not match state count"));
            return;
        }
        for (i, tag) in tags.iter().enumerate() {
            match (i == terminal, tag) {
                (true, None) => {}
                (true, Some(_)) => out.push(Diagnostic::new(format!("state {i}"), "terminal state carries a period")),
                (false, None) => out.push(Diagnostic::new(format!("state {i}"), "missing period tag")),
                (false, Some(tag)) => {
                    if tag.period >= periods {
                        out.push(Diagnostic::new(format!("state {i}"), "period beyond horizon"));
                        continue;
                    }
                    for u in 0..self.actions_a[i] {
                        for v in 0..self.actions_b[i] {
                            for (j, &p) in self.transition[i][u][v].iter().enumerate() {
                                if p <= 0.0 {
                                    continue;
                                }
                                let ok = if tag.period + 1 == periods {
                                    j == terminal
                                } else {
                                    tags[j].is_some_and(|t| t.period == tag.period + 1)
                                };
                                if !ok {
                                    out.push(Diagnostic::new(
                                        format!("(i={i}, u={u}, v={v})"),
                                        format!("transition to {j} does not advance the period"),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Checks that `p` is a probability vector within `tol`.
pub fn check_simplex(p: &[f64], tol: f64) -> std::result::Result<(), String> {
    if p.is_empty() {
        return Err("empty vector".into());
    }
    if let Some(x) = p.iter().find(|x| !x.is_finite() || **x < -tol) {
        return Err(format!("invalid entry {x}"));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(format!("sums to {sum}"));
    }
    Ok(())
}

/// Stationary mixed policy: one distribution per state. On time-embedded
/// states this also encodes time dependence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MixedPolicy {
    probs: Vec<Vec<f64>>,
}

impl MixedPolicy {
    pub fn new(probs: Vec<Vec<f64>>) -> Result<Self> {
        for (i, p) in probs.iter().enumerate() {
            check_simplex(p, SIMPLEX_TOL).map_err(|m| Error::NotSimplex(format!("state {i}: {m}")))?;
        }
        Ok(MixedPolicy { probs })
    }

    pub fn uniform(counts: &[usize]) -> Self {
        let probs = counts.iter().map(|&k| vec![1.0 / k as f64; k]).collect();
        MixedPolicy { probs }
    }

    /// Degenerate policy choosing `actions[i]` at state `i`.
    pub fn pure(actions: &[usize], counts: &[usize]) -> Self {
        let probs = actions
            .iter()
            .zip(counts)
            .map(|(&a, &k)| {
                let mut p = vec![0.0; k];
                p[a] = 1.0;
                p
            })
            .collect();
        MixedPolicy { probs }
    }

    pub fn at(&self, i: usize) -> &[f64] {
        &self.probs[i]
    }

    pub fn n_states(&self) -> usize {
        self.probs.len()
    }

    pub fn as_rows(&self) -> &[Vec<f64>] {
        &self.probs
    }

    /// Replaces the distribution at one state.
    pub fn with_state(mut self, i: usize, p: Vec<f64>) -> Result<Self> {
        check_simplex(&p, SIMPLEX_TOL).map_err(|m| Error::NotSimplex(format!("state {i}: {m}")))?;
        self.probs[i] = p;
        Ok(self)
    }

    /// The action with the largest weight (lowest index on ties).
    pub fn argmax(&self, i: usize) -> usize {
        let mut best = 0;
        for (a, &p) in self.probs[i].iter().enumerate() {
            if p > self.probs[i][best] {
                best = a;
            }
        }
        best
    }

    pub fn validate_for(&self, model: &GameModel, player: Player) -> Result<()> {
        let counts = model.action_counts(player);
        if self.probs.len() != counts.len() {
            return Err(Error::Dimension(format!(
                "policy covers {} states, model has {}",
                self.probs.len(),
                counts.len()
            )));
        }
        for (i, (p, &k)) in self.probs.iter().zip(counts).enumerate() {
            if p.len() != k {
                return Err(Error::Dimension(format!(
                    "player {player:?} has {k} actions at state {i}, policy gives {}",
                    p.len()
                )));
            }
            check_simplex(p, SIMPLEX_TOL).map_err(|m| Error::NotSimplex(format!("state {i}: {m}")))?;
        }
        Ok(())
    }
}

/// State-indexed values; zero at absorbing and terminal states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValueFunction(pub Vec<f64>);

impl ValueFunction {
    pub fn zeros(n: usize) -> Self {
        ValueFunction(vec![0.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sup_distance(&self, other: &ValueFunction) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for ValueFunction {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// One-player decision problem left over after fixing one side's policy.
#[derive(Clone, Debug)]
pub struct MdpView {
    orientation: Orientation,
    regime: Regime,
    cost: Vec<Vec<f64>>,
    kernel: Vec<Vec<Vec<f64>>>,
    initial_state: usize,
    period_tags: Option<Vec<Option<PeriodTag>>>,
    fixed: Option<(Player, MixedPolicy)>,
}

impl MdpView {
    /// A bare decision problem not derived from a game. `period_tags` is
    /// required for the embedded regime.
    pub fn from_mdp(
        orientation: Orientation,
        regime: Regime,
        cost: Vec<Vec<f64>>,
        kernel: Vec<Vec<Vec<f64>>>,
        initial_state: usize,
        period_tags: Option<Vec<Option<PeriodTag>>>,
    ) -> Result<Self> {
        if cost.len() != kernel.len() || initial_state >= cost.len() {
            return Err(Error::Dimension("cost and kernel must cover the same states".into()));
        }
        let n = cost.len();
        for (x, (c, k)) in cost.iter().zip(&kernel).enumerate() {
            if c.is_empty() || c.len() != k.len() {
                return Err(Error::Dimension(format!("state {x}: action counts disagree")));
            }
            for (a, row) in k.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Dimension(format!("state {x}, action {a}: row length")));
                }
                check_simplex(row, SIMPLEX_TOL)
                    .map_err(|m| Error::NotSimplex(format!("kernel ({x}, {a}): {m}")))?;
            }
        }
        if matches!(regime, Regime::Embedded { .. }) && period_tags.as_ref().map(Vec::len) != Some(n) {
            return Err(Error::Dimension("embedded view needs one period tag per state".into()));
        }
        Ok(MdpView { orientation, regime, cost, kernel, initial_state, period_tags, fixed: None })
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn regime(&self) -> &Regime {
        &self.regime
    }

    pub fn n_states(&self) -> usize {
        self.cost.len()
    }

    pub fn n_actions(&self, x: usize) -> usize {
        self.cost[x].len()
    }

    pub fn cost(&self, x: usize, a: usize) -> f64 {
        self.cost[x][a]
    }

    pub fn costs(&self, x: usize) -> &[f64] {
        &self.cost[x]
    }

    pub fn kernel(&self, x: usize, a: usize) -> &[f64] {
        &self.kernel[x][a]
    }

    pub fn terminal(&self) -> Option<usize> {
        self.regime.terminal()
    }

    pub fn is_terminal(&self, x: usize) -> bool {
        self.terminal() == Some(x)
    }

    pub fn discount(&self) -> f64 {
        self.regime.discount()
    }

    pub fn initial_state(&self) -> usize {
        self.initial_state
    }

    pub fn period_tag(&self, x: usize) -> Option<PeriodTag> {
        self.period_tags.as_ref().and_then(|t| t[x])
    }

    /// The player whose policy was fixed, with that policy.
    pub fn fixed(&self) -> Option<(Player, &MixedPolicy)> {
        self.fixed.as_ref().map(|(p, pol)| (*p, pol))
    }

    /// The player still choosing actions.
    pub fn controller(&self) -> Option<Player> {
        self.fixed.as_ref().map(|(p, _)| p.opponent())
    }

    /// `sum_j p(j|x,a) values[j]`.
    pub fn expected(&self, x: usize, a: usize, values: &[f64]) -> f64 {
        self.kernel[x][a].iter().zip(values).map(|(p, h)| p * h).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::two_period_matrix_game;

    fn root_game() -> GameModel {
        two_period_matrix_game()
    }

    #[test]
    fn stage_cost_pure_and_mixed() {
        let g = root_game();
        assert_eq!(g.stage_cost_mixed(0, &[0.0, 1.0], &[1.0, 0.0]).unwrap(), 6.0);
        assert_eq!(g.stage_cost_mixed(0, &[1.0, 0.0], &[1.0, 0.0]).unwrap(), 2.0);
        // 0.5*(0.75*2+0.25*1) + 0.5*(0.75*6+0.25*8) = 0.875 + 3.25
        let c = g.stage_cost_mixed(0, &[0.5, 0.5], &[0.75, 0.25]).unwrap();
        assert!((c - 4.125).abs() < 1e-12);
    }

    #[test]
    fn transition_mixture() {
        let g = root_game();
        let row = g.transition_mixed(0, &[0.0, 1.0], &[1.0, 0.0]).unwrap();
        assert!((row[1] - 0.4).abs() < 1e-12 && (row[2] - 0.6).abs() < 1e-12);
        let row = g.transition_mixed(0, &[1.0, 0.0], &[0.6, 0.4]).unwrap();
        assert!((row[1] - 0.64).abs() < 1e-12 && (row[2] - 0.36).abs() < 1e-12);
        // period-1 states move to the terminal state deterministically
        let row = g.transition_mixed(1, &[0.5, 0.5], &[0.5, 0.5]).unwrap();
        assert_eq!(row, vec![0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn mixed_args_rejected() {
        let g = root_game();
        assert!(matches!(g.stage_cost_mixed(0, &[1.0], &[1.0, 0.0]), Err(Error::Dimension(_))));
        assert!(matches!(g.stage_cost_mixed(0, &[0.7, 0.7], &[1.0, 0.0]), Err(Error::NotSimplex(_))));
    }

    #[test]
    fn fixing_b_gives_max_view() {
        let g = root_game();
        let nu = MixedPolicy::uniform(&[2, 2, 2, 1]).with_state(0, vec![0.6, 0.4]).unwrap();
        let view = g.fix_player(&nu, Player::B).unwrap();
        assert_eq!(view.orientation(), Orientation::Max);
        assert_eq!(view.controller(), Some(Player::A));
        assert!((view.cost(0, 0) - 1.6).abs() < 1e-12);
        assert!((view.cost(0, 1) - 6.8).abs() < 1e-12);
        assert!((view.kernel(0, 0)[1] - 0.64).abs() < 1e-12);

        let pure = MixedPolicy::pure(&[1, 0, 0, 0], &[2, 2, 2, 1]);
        let view = g.fix_player(&pure, Player::B).unwrap();
        assert_eq!(view.costs(0), &[1.0, 8.0]);
    }

    #[test]
    fn fix_player_rejects_wrong_shape() {
        let g = root_game();
        let bad = MixedPolicy::uniform(&[2, 2]);
        assert!(g.fix_player(&bad, Player::A).is_err());
    }

    #[test]
    fn embedding_shapes() {
        let g = root_game();
        assert_eq!(g.n_states(), 4);
        assert_eq!(g.regime(), &Regime::Embedded { periods: 2, terminal: 3 });
        assert_eq!(g.period_tag(0), Some(PeriodTag { period: 0, origin: 0 }));
        assert_eq!(g.period_tag(2), Some(PeriodTag { period: 1, origin: 2 }));
        assert_eq!(g.period_tag(3), None);
        assert!(g.validate().is_empty());

        let raw = crate::games::two_period_matrix_game_raw();
        let one = GameModel { regime: Regime::FiniteHorizon { periods: 1 }, ..raw.clone() };
        let e = one.embed_finite_horizon().unwrap();
        assert_eq!(e.n_states(), 2);
        // the single epoch carries the expected stage cost into the terminal state
        assert_eq!(e.cost(0, 1, 0, 1), 6.0);

        let zero = GameModel { regime: Regime::FiniteHorizon { periods: 0 }, ..raw.clone() };
        assert!(matches!(zero.embed_finite_horizon(), Err(Error::ZeroHorizon)));
        assert!(matches!(g.embed_finite_horizon(), Err(Error::WrongRegime { .. })));
    }

    #[test]
    fn validate_reports_bad_row() {
        let mut g = crate::games::two_period_matrix_game_raw();
        g.transition[0][1][0] = vec![0.0, 0.3, 0.6];
        let diags = g.validate();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].location.contains("i=0, u=1, v=0"), "{}", diags[0]);
    }

    #[test]
    fn validate_reports_absorbing_cost() {
        let mut g = crate::games::waste_inspection_game(&crate::games::WasteGameConfig::with_sites(2)).unwrap();
        let s = g.terminal().unwrap();
        g.cost[s][0][0][s] = 1.0;
        let diags = g.validate();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].violation.contains("nonzero cost"));
    }

    #[test]
    fn json_roundtrip_keeps_model() {
        let g = root_game();
        let back = GameModel::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
