//! Game and policy sources, solve/bound/reproduction runs, and their CSV and
//! JSON renderings. The `zsg` binary is a thin argument parser over this.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::equilibrium::{
    best_response, continuation_matrix, evaluate_policy_pair, naive_policy_iteration, shapley_value_iteration,
    solve_view,
};
use crate::error::{Error, Result};
use crate::game::{GameModel, MixedPolicy, Player, Regime, ValueFunction};
use crate::games::{
    heuristic_generator, heuristic_column_policy, two_period_matrix_game, uniform_policy, waste_inspection_game, WasteGameConfig,
};
use crate::relax::{
    estimate_view_bound, exact_dual_bound_enumeration, make_uniform_reference, validate_abs_continuity,
    DualEstimate, McConfig, PenaltyGenerator, ReferenceMeasure,
};

/// Header of the per-round reproduction CSV.
pub const ROUND_CSV_HEADER: &str = "k,pair_value,br_lower,br_upper,dual_lower,dual_lower_se,dual_upper,dual_upper_se,status";

/// Exact best responses are only computed up to this many sites.
pub const EXACT_BR_MAX_SITES: usize = 10;

#[derive(Clone, Debug)]
pub struct LoadedGame {
    pub id: String,
    pub model: GameModel,
    /// Set for the built-in waste game.
    pub waste: Option<WasteGameConfig>,
}

impl LoadedGame {
    /// Human-readable label for a state.
    pub fn label(&self, i: usize) -> String {
        if let Some(cfg) = &self.waste {
            return match cfg.state_of(i) {
                Some((d, s, c)) => format!("(l{},l{},{})", d + 1, s + 1, if c { "TRUE" } else { "FALSE" }),
                None => "absorbing".into(),
            };
        }
        match self.model.period_tag(i) {
            Some(tag) if self.id == "matrix2p" => format!("(t={},x={})", tag.period, tag.origin + 1),
            Some(tag) => format!("(t={},i={})", tag.period, tag.origin),
            None if self.model.is_terminal(i) => "terminal".into(),
            None => i.to_string(),
        }
    }
}

/// Parses `builtin:matrix2p`, `builtin:waste[,N=<sites>]` or `file:<path>`.
/// Finite-horizon files are time-embedded on load.
pub fn load_game(source: &str) -> Result<LoadedGame> {
    if let Some(rest) = source.strip_prefix("builtin:") {
        let mut parts = rest.split(',');
        let name = parts.next().unwrap_or_default();
        let mut params = BTreeMap::new();
        for p in parts {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("bad builtin parameter `{p}`")))?;
            params.insert(k.trim().to_ascii_lowercase(), v.trim().to_string());
        }
        return match name {
            "matrix2p" => Ok(LoadedGame { id: "matrix2p".into(), model: two_period_matrix_game(), waste: None }),
            "waste" => {
                let n = match params.get("n") {
                    Some(v) => v.parse().map_err(|_| Error::Config(format!("bad site count `{v}`")))?,
                    None => 10,
                };
                let cfg = WasteGameConfig::with_sites(n);
                let model = waste_inspection_game(&cfg)?;
                Ok(LoadedGame { id: format!("waste,N={n}"), model, waste: Some(cfg) })
            }
            other => Err(Error::Config(format!("unknown builtin game `{other}`"))),
        };
    }
    if let Some(path) = source.strip_prefix("file:") {
        let text = read_input(path)?;
        let mut model = GameModel::from_json(&text)?;
        if matches!(model.regime(), Regime::FiniteHorizon { .. }) {
            model = model.embed_finite_horizon()?;
        }
        return Ok(LoadedGame { id: path.to_string(), model, waste: None });
    }
    Err(Error::Config(format!("game source must start with builtin: or file:, got `{source}`")))
}

/// `uniform`, `optimal`, `heuristic` or its alias `paper_nu_hat` (B in
/// `builtin:matrix2p` only) or `file:<path>` with a JSON
/// object mapping state index to probability array. States missing from a
/// file get the uniform distribution.
pub fn load_policy(game: &LoadedGame, player: Player, source: &str) -> Result<MixedPolicy> {
    let model = &game.model;
    let policy = match source {
        "uniform" => uniform_policy(model, player),
        "optimal" => {
            let s = shapley_value_iteration(model, 1e-10, 1_000_000)?;
            match player {
                Player::A => s.mu,
                Player::B => s.nu,
            }
        }
        "heuristic" | "paper_nu_hat" if game.id == "matrix2p" && player == Player::B => heuristic_column_policy(),
        "heuristic" | "paper_nu_hat" => {
            return Err(Error::Config("the heuristic policy is B's policy in builtin:matrix2p".into()))
        }
        other => {
            let path = other
                .strip_prefix("file:")
                .ok_or_else(|| Error::Config(format!("unknown policy `{other}`")))?;
            let map: BTreeMap<usize, Vec<f64>> = serde_json::from_str(&read_input(path)?)?;
            let mut policy = uniform_policy(model, player);
            for (i, p) in map {
                if i >= model.n_states() {
                    return Err(Error::Dimension(format!("policy file names state {i}")));
                }
                policy = policy.with_state(i, p)?;
            }
            policy
        }
    };
    policy.validate_for(model, player)?;
    Ok(policy)
}

/// Parses `--fix` values such as `B=paper_nu_hat`, `both=uniform`, `A=file:p.json`.
pub fn parse_fix(specs: &[String]) -> Result<(Option<String>, Option<String>)> {
    let (mut a, mut b) = (None, None);
    for spec in specs {
        let (who, what) = spec
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--fix expects PLAYER=POLICY, got `{spec}`")))?;
        match who {
            "A" | "a" => a = Some(what.to_string()),
            "B" | "b" => b = Some(what.to_string()),
            "both" => {
                a = Some(what.to_string());
                b = Some(what.to_string());
            }
            _ => return Err(Error::Config(format!("unknown player `{who}` in --fix"))),
        }
    }
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
    Both,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Side::Lower),
            "upper" => Ok(Side::Upper),
            "both" => Ok(Side::Both),
            _ => Err(Error::Config(format!("side must be lower, upper or both, got `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("format must be csv or json, got `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub game: String,
    pub seed: Option<u64>,
    pub n_scenarios: Option<usize>,
    pub timestamp: u64,
}

impl Metadata {
    fn new(game: &str, seed: Option<u64>, n_scenarios: Option<usize>) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        Metadata { game: game.to_string(), seed, n_scenarios, timestamp }
    }
}

// ---------------------------------------------------------------- solve

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub meta: Metadata,
    pub iterations: usize,
    pub states: Vec<SolvedState>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolvedState {
    pub state: usize,
    pub label: String,
    pub value: f64,
    pub row_strategy: Vec<f64>,
    pub col_strategy: Vec<f64>,
}

pub fn run_solve(game: &LoadedGame, tol: f64, max_iter: usize) -> Result<SolveReport> {
    let sol = shapley_value_iteration(&game.model, tol, max_iter)?;
    let states = (0..game.model.n_states())
        .filter(|&i| !game.model.is_terminal(i))
        .map(|i| SolvedState {
            state: i,
            label: game.label(i),
            value: sol.values[i],
            row_strategy: sol.mu.at(i).to_vec(),
            col_strategy: sol.nu.at(i).to_vec(),
        })
        .collect();
    Ok(SolveReport { meta: Metadata::new(&game.id, None, None), iterations: sol.iterations, states })
}

impl SolveReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("state,label,value,row_strategy,col_strategy\n");
        for s in &self.states {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                s.state,
                csv_field(&s.label),
                fmt_num(s.value),
                join(&s.row_strategy),
                join(&s.col_strategy)
            );
        }
        out
    }
}

// ---------------------------------------------------------------- bound

/// Which generator to build penalties from.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSource {
    Zero,
    /// Exact optimal value of each side's view.
    Exact,
    /// `J^{mu_hat, nu_hat}`.
    PairValue,
    HeuristicGenerator,
    File(String),
}

impl std::str::FromStr for GeneratorSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "zero" => GeneratorSource::Zero,
            "exact" => GeneratorSource::Exact,
            "pair-value" => GeneratorSource::PairValue,
            "heuristic" | "paper_h_hat" => GeneratorSource::HeuristicGenerator,
            other => match other.strip_prefix("file:") {
                Some(p) => GeneratorSource::File(p.to_string()),
                None => return Err(Error::Config(format!("unknown generator `{other}`"))),
            },
        })
    }
}

#[derive(Clone, Debug)]
pub struct BoundRequest {
    pub mu_hat: Option<MixedPolicy>,
    pub nu_hat: Option<MixedPolicy>,
    pub h: GeneratorSource,
    pub side: Side,
    /// `None` means the uniform reference measure (SSP games only).
    pub q: Option<ReferenceMeasure>,
    pub mc: McConfig,
    pub tol: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub meta: Metadata,
    pub state: String,
    pub lower: Option<DualEstimate>,
    pub upper: Option<DualEstimate>,
}

impl BoundReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("side,state,mean,se,n,seed\n");
        for (name, est) in [("lower", &self.lower), ("upper", &self.upper)] {
            if let Some(e) = est {
                let _ = writeln!(
                    out,
                    "{name},{},{},{},{},{}",
                    csv_field(&self.state),
                    fmt_num(e.mean),
                    fmt_num(e.standard_error),
                    e.n_scenarios,
                    e.seed
                );
            }
        }
        out
    }
}

fn load_generator(game: &LoadedGame, path: &str) -> Result<PenaltyGenerator> {
    let map: BTreeMap<usize, f64> = serde_json::from_str(&read_input(path)?)?;
    let mut h = vec![0.0; game.model.n_states()];
    for (i, v) in map {
        *h.get_mut(i).ok_or_else(|| Error::Dimension(format!("generator file names state {i}")))? = v;
    }
    Ok(PenaltyGenerator::new(h))
}

/// Reads a reference measure from a JSON array of rows.
pub fn load_reference(game: &LoadedGame, path: &str) -> Result<ReferenceMeasure> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(&read_input(path)?)?;
    let absorbing = game.model.terminal().ok_or(Error::WrongRegime { expected: "SSP" })?;
    ReferenceMeasure::new(rows, absorbing)
}

pub fn run_bound(game: &LoadedGame, req: &BoundRequest) -> Result<BoundReport> {
    let model = &game.model;
    let mu = req.mu_hat.clone().unwrap_or_else(|| uniform_policy(model, Player::A));
    let nu = req.nu_hat.clone().unwrap_or_else(|| uniform_policy(model, Player::B));
    let q = match (model.regime(), &req.q) {
        (Regime::Ssp { .. }, Some(q)) => Some(q.clone()),
        (Regime::Ssp { .. }, None) => Some(make_uniform_reference(model)?),
        _ => None,
    };
    let pair = match req.h {
        GeneratorSource::PairValue => Some(evaluate_policy_pair(model, &mu, &nu)?),
        _ => None,
    };
    let side_bound = |fixed: &MixedPolicy, who: Player| -> Result<DualEstimate> {
        let view = model.fix_player(fixed, who)?;
        if let Some(q) = &q {
            if let Some(v) = validate_abs_continuity(&view, q).first() {
                return Err(Error::AbsContinuity { state: v.state, action: v.action, next: v.next });
            }
        }
        let h = match &req.h {
            GeneratorSource::Zero => PenaltyGenerator::zero(model.n_states()),
            GeneratorSource::Exact => solve_view(&view, req.tol)?.values.into(),
            GeneratorSource::PairValue => pair.clone().expect("computed above").into(),
            GeneratorSource::HeuristicGenerator if game.id == "matrix2p" => heuristic_generator(),
            GeneratorSource::HeuristicGenerator => {
                return Err(Error::Config("the heuristic generator only applies to builtin:matrix2p".into()))
            }
            GeneratorSource::File(p) => load_generator(game, p)?,
        };
        estimate_view_bound(&view, &h, q.as_ref(), &req.mc)
    };
    let lower = matches!(req.side, Side::Lower | Side::Both).then(|| side_bound(&mu, Player::A)).transpose()?;
    let upper = matches!(req.side, Side::Upper | Side::Both).then(|| side_bound(&nu, Player::B)).transpose()?;
    Ok(BoundReport {
        meta: Metadata::new(&game.id, Some(req.mc.seed), Some(req.mc.n)),
        state: game.label(model.initial_state()),
        lower,
        upper,
    })
}

// ---------------------------------------------------------------- repro

/// One plotted point-set of the policy-iteration experiment.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRow {
    pub k: usize,
    pub pair_value: f64,
    pub br_lower: Option<f64>,
    pub br_upper: Option<f64>,
    pub dual_lower: Option<f64>,
    pub dual_lower_se: Option<f64>,
    pub dual_upper: Option<f64>,
    pub dual_upper_se: Option<f64>,
    pub status: String,
}

impl ExperimentRow {
    /// `dual_lower - 3 se <= br_lower` and `br_upper <= dual_upper + 3 se`
    /// wherever both columns are present.
    pub fn sandwich_holds(&self) -> bool {
        let low = match (self.dual_lower, self.dual_lower_se, self.br_lower) {
            (Some(d), Some(se), Some(b)) => d - 3.0 * se <= b,
            _ => true,
        };
        let up = match (self.dual_upper, self.dual_upper_se, self.br_upper) {
            (Some(d), Some(se), Some(b)) => b <= d + 3.0 * se,
            _ => true,
        };
        low && up
    }

    /// Dual upper minus dual lower.
    pub fn dual_gap(&self) -> Option<f64> {
        Some(self.dual_upper? - self.dual_lower?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentResult {
    pub meta: Metadata,
    pub rows: Vec<ExperimentRow>,
    /// Error that cut the run short, if any.
    pub failure: Option<String>,
}

impl ExperimentResult {
    pub fn ok(&self) -> bool {
        self.failure.is_none() && self.rows.iter().all(|r| r.status == "ok")
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{ROUND_CSV_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.k,
                fmt_num(r.pair_value),
                opt(r.br_lower),
                opt(r.br_upper),
                opt(r.dual_lower),
                opt(r.dual_lower_se),
                opt(r.dual_upper),
                opt(r.dual_upper_se),
                r.status
            );
        }
        out
    }
}

/// Naive policy iteration from uniform policies on the waste game, with
/// exact best responses (small games) and weak-form dual bounds around every
/// round. `h = J^{(mu^k, nu^k)}` on both sides with the uniform reference measure.
pub fn repro_waste_game(game: &LoadedGame, rounds: usize, mc: &McConfig, tol: f64) -> Result<ExperimentResult> {
    let model = &game.model;
    let cfg = game
        .waste
        .as_ref()
        .ok_or_else(|| Error::Config("waste-game reproduction needs builtin:waste".into()))?;
    let root = model.initial_state();
    let q = make_uniform_reference(model)?;
    let trace = naive_policy_iteration(
        model,
        &uniform_policy(model, Player::A),
        &uniform_policy(model, Player::B),
        rounds + 1,
    )?;
    let mut rows = Vec::with_capacity(trace.rounds.len());
    for round in &trace.rounds {
        let mut status = Vec::new();
        let (mut br_lower, mut br_upper) = (None, None);
        if cfg.sites <= EXACT_BR_MAX_SITES {
            match best_response(model, &round.mu, Player::A, tol) {
                Ok(b) => br_lower = Some(b.values[root]),
                Err(e) => status.push(format!("br_lower: {e}")),
            }
            match best_response(model, &round.nu, Player::B, tol) {
                Ok(b) => br_upper = Some(b.values[root]),
                Err(e) => status.push(format!("br_upper: {e}")),
            }
        }
        let h: PenaltyGenerator = round.values.clone().into();
        let mut side = |fixed: &MixedPolicy, who: Player, label: &str| -> Option<DualEstimate> {
            let res = model
                .fix_player(fixed, who)
                .and_then(|view| estimate_view_bound(&view, &h, Some(&q), mc));
            res.map_err(|e| status.push(format!("{label}: {e}"))).ok()
        };
        let lower = side(&round.mu, Player::A, "dual_lower");
        let upper = side(&round.nu, Player::B, "dual_upper");
        let mut row = ExperimentRow {
            k: round.k,
            pair_value: round.values[root],
            br_lower,
            br_upper,
            dual_lower: lower.as_ref().map(|e| e.mean),
            dual_lower_se: lower.as_ref().map(|e| e.standard_error),
            dual_upper: upper.as_ref().map(|e| e.mean),
            dual_upper_se: upper.as_ref().map(|e| e.standard_error),
            status: String::new(),
        };
        if !row.sandwich_holds() {
            status.push("sandwich-violated".into());
        }
        row.status = if status.is_empty() { "ok".into() } else { status.join("; ").replace(',', ";") };
        rows.push(row);
    }
    Ok(ExperimentResult {
        meta: Metadata::new(&game.id, Some(mc.seed), Some(mc.n)),
        rows,
        failure: trace.failure,
    })
}

/// Two-period matrix game: equilibrium values and strategies, A's best response
/// to `nu_hat`, and the dual upper bounds with `h_hat` and with the exact
/// continuation value.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixGameRepro {
    pub meta: Metadata,
    pub rows: Vec<MatrixReproRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixReproRow {
    pub item: String,
    pub t: usize,
    pub x: usize,
    pub value: f64,
    pub se: Option<f64>,
    pub row_strategy: Vec<f64>,
    pub col_strategy: Vec<f64>,
}

impl MatrixGameRepro {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("item,t,x,value,se,row_strategy,col_strategy\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.item,
                r.t,
                r.x,
                fmt_num(r.value),
                opt(r.se),
                join(&r.row_strategy),
                join(&r.col_strategy)
            );
        }
        out
    }

    pub fn find(&self, item: &str) -> Option<&MatrixReproRow> {
        self.rows.iter().find(|r| r.item == item)
    }
}

pub fn repro_matrix_game(mc: &McConfig, tol: f64) -> Result<MatrixGameRepro> {
    let model = two_period_matrix_game();
    let star = shapley_value_iteration(&model, tol, 1_000)?;
    let mut rows = Vec::new();
    for i in 0..model.n_states() {
        let Some(tag) = model.period_tag(i) else { continue };
        rows.push(MatrixReproRow {
            item: "equilibrium".into(),
            t: tag.period,
            x: tag.origin + 1,
            value: star.values[i],
            se: None,
            row_strategy: star.mu.at(i).to_vec(),
            col_strategy: star.nu.at(i).to_vec(),
        });
    }
    let nu_hat = heuristic_column_policy();
    let br = best_response(&model, &nu_hat, Player::B, tol)?;
    let cont = continuation_matrix(&model, 0, br.values.as_slice());
    rows.push(MatrixReproRow {
        item: "continuation_matrix".into(),
        t: 0,
        x: 1,
        value: f64::NAN,
        se: None,
        row_strategy: cont[0].clone(),
        col_strategy: cont[1].clone(),
    });
    rows.push(MatrixReproRow {
        item: "best_response_nu_hat".into(),
        t: 0,
        x: 1,
        value: br.values[0],
        se: None,
        row_strategy: br.policy.at(0).to_vec(),
        col_strategy: nu_hat.at(0).to_vec(),
    });

    let view = model.fix_player(&nu_hat, Player::B)?;
    let h_hat = heuristic_generator();
    let golden = exact_dual_bound_enumeration(&view, &h_hat)?;
    rows.push(MatrixReproRow {
        item: "dual_upper_h_hat_exact".into(),
        t: 0,
        x: 1,
        value: golden,
        se: Some(0.0),
        row_strategy: vec![],
        col_strategy: nu_hat.at(0).to_vec(),
    });
    let est = estimate_view_bound(&view, &h_hat, None, mc)?;
    rows.push(MatrixReproRow {
        item: "dual_upper_h_hat".into(),
        t: 0,
        x: 1,
        value: est.mean,
        se: Some(est.standard_error),
        row_strategy: vec![],
        col_strategy: nu_hat.at(0).to_vec(),
    });
    let strong = estimate_view_bound(&view, &br.values.clone().into(), None, mc)?;
    rows.push(MatrixReproRow {
        item: "dual_upper_strong_duality".into(),
        t: 0,
        x: 1,
        value: strong.mean,
        se: Some(strong.standard_error),
        row_strategy: vec![],
        col_strategy: nu_hat.at(0).to_vec(),
    });
    let star_view = model.fix_player(&star.nu, Player::B)?;
    let star_h: PenaltyGenerator = solve_view(&star_view, tol)?.values.into();
    let at_star = estimate_view_bound(&star_view, &star_h, None, mc)?;
    rows.push(MatrixReproRow {
        item: "dual_upper_nu_star".into(),
        t: 0,
        x: 1,
        value: at_star.mean,
        se: Some(at_star.standard_error),
        row_strategy: vec![],
        col_strategy: star.nu.at(0).to_vec(),
    });
    Ok(MatrixGameRepro { meta: Metadata::new("matrix2p", Some(mc.seed), Some(mc.n)), rows })
}

// ---------------------------------------------------------------- output

/// Writes `body` to `out` (stdout when `None`). CSV output gets a
/// `<out>.meta.json` sidecar holding seed, scenario count and timestamp so
/// the CSV itself is reproducible byte for byte.
pub fn write_output<T: Serialize>(out: Option<&Path>, format: Format, csv: &str, full: &T, meta: &Metadata) -> Result<()> {
    let body = match format {
        Format::Csv => csv.to_string(),
        Format::Json => serde_json::to_string_pretty(full)? + "\n",
    };
    match out {
        None => print!("{body}"),
        Some(path) => {
            std::fs::write(path, body)?;
            if format == Format::Csv {
                let mut side = path.as_os_str().to_owned();
                side.push(".meta.json");
                std::fs::write(side, serde_json::to_string_pretty(meta)? + "\n")?;
            }
        }
    }
    Ok(())
}

/// Quotes a field that contains a comma or quote.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Unreadable input files are reported as input errors, like malformed ones.
fn read_input(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        // prints -0 as 0
        format!("{}", x + 0.0)
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn join(v: &[f64]) -> String {
    v.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(" ")
}

/// Optional values read from `--config`; command-line flags win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub rounds: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&read_input(path)?)?)
    }
}

/// Values of the exact pair evaluation, re-exported for callers that only
/// need `J^{mu,nu}` at the root.
pub fn root_pair_value(game: &LoadedGame, mu: &MixedPolicy, nu: &MixedPolicy) -> Result<f64> {
    let v: ValueFunction = evaluate_policy_pair(&game.model, mu, nu)?;
    Ok(v[game.model.initial_state()])
}
