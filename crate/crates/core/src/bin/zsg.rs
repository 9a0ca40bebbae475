use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zsg_duality::experiment::{
    load_game, load_policy, load_reference, parse_fix, repro_matrix_game, repro_waste_game, run_bound, run_solve,
    write_output, BoundRequest, ConfigFile, Format, GeneratorSource, Side,
};
use zsg_duality::relax::McConfig;
use zsg_duality::{Error, Player, Result};

#[derive(Parser)]
#[command(name = "zsg", version, about = "Zero-sum stochastic games: equilibria and dual bounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Shapley value iteration: value and stationary strategies per state.
    Solve(Common),
    /// Monte Carlo dual bound(s) on best-response values.
    Bound {
        #[command(flatten)]
        common: Common,
        /// Fixed policy, e.g. `B=paper_nu_hat`, `both=uniform`, `A=file:mu.json`.
        #[arg(long)]
        fix: Vec<String>,
        /// Penalty generator: zero, exact, pair-value, paper_h_hat (alias heuristic) or file:PATH.
        #[arg(long, default_value = "exact")]
        h: String,
        /// lower, upper or both. Defaults to the side(s) fixed with --fix.
        #[arg(long)]
        side: Option<Side>,
        /// Reference measure for absorbing-state games: uniform or file:PATH.
        #[arg(long, default_value = "uniform")]
        q: String,
    },
    /// Reproduce a reference experiment: matrix-game or waste-game.
    Repro {
        which: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rounds: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "builtin:matrix2p")]
    game: String,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Monte Carlo scenarios or paths.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// JSON file with tol, max_iter, n, seed, rounds; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

struct Settings {
    tol: f64,
    max_iter: usize,
    n: usize,
    seed: u64,
    rounds: usize,
}

impl Common {
    fn settings(&self, rounds: Option<usize>) -> Result<Settings> {
        let file = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        Ok(Settings {
            tol: self.tol.or(file.tol).unwrap_or(1e-10),
            max_iter: self.max_iter.or(file.max_iter).unwrap_or(100_000),
            n: self.n.or(file.n).unwrap_or(10_000),
            seed: self.seed.or(file.seed).unwrap_or(0),
            rounds: rounds.or(file.rounds).unwrap_or(4),
        })
    }
}

/// `Ok(false)` means output was written but some row reports a failure.
fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Solve(c) => {
            let s = c.settings(None)?;
            let game = load_game(&c.game)?;
            let rep = run_solve(&game, s.tol, s.max_iter)?;
            write_output(c.out.as_deref(), c.format, &rep.to_csv(), &rep, &rep.meta)?;
            Ok(true)
        }
        Cmd::Bound { common: c, fix, h, side, q } => {
            let s = c.settings(None)?;
            let game = load_game(&c.game)?;
            let (fa, fb) = parse_fix(&fix)?;
            let side = side.unwrap_or(match (&fa, &fb) {
                (Some(_), None) => Side::Lower,
                (None, Some(_)) => Side::Upper,
                _ => Side::Both,
            });
            let q = match q.as_str() {
                "uniform" => None,
                other => match other.strip_prefix("file:") {
                    Some(p) => Some(load_reference(&game, p)?),
                    None => return Err(Error::Config(format!("unknown reference measure `{other}`"))),
                },
            };
            let req = BoundRequest {
                mu_hat: fa.map(|p| load_policy(&game, Player::A, &p)).transpose()?,
                nu_hat: fb.map(|p| load_policy(&game, Player::B, &p)).transpose()?,
                h: h.parse()?,
                side,
                q,
                mc: McConfig::new(s.n, s.seed),
                tol: s.tol,
            };
            if req.h == GeneratorSource::PairValue && (req.mu_hat.is_none() || req.nu_hat.is_none()) {
                eprintln!("note: unfixed policies default to uniform for pair-value");
            }
            let rep = run_bound(&game, &req)?;
            write_output(c.out.as_deref(), c.format, &rep.to_csv(), &rep, &rep.meta)?;
            Ok(true)
        }
        Cmd::Repro { which, common: c, rounds } => {
            let s = c.settings(rounds)?;
            let mc = McConfig::new(s.n, s.seed);
            match which.as_str() {
                "matrix-game" => {
                    let rep = repro_matrix_game(&mc, s.tol)?;
                    write_output(c.out.as_deref(), c.format, &rep.to_csv(), &rep, &rep.meta)?;
                    Ok(true)
                }
                "waste-game" => {
                    let source = if c.game.starts_with("builtin:waste") { c.game.clone() } else { "builtin:waste,N=10".into() };
                    let game = load_game(&source)?;
                    let rep = repro_waste_game(&game, s.rounds, &mc, s.tol)?;
                    write_output(c.out.as_deref(), c.format, &rep.to_csv(), &rep, &rep.meta)?;
                    if let Some(f) = &rep.failure {
                        eprintln!("error: {f}");
                    }
                    Ok(rep.ok())
                }
                other => Err(Error::Config(format!("unknown experiment `{other}`; expected matrix-game or waste-game"))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Invalid(diags) = &e {
                for d in diags {
                    eprintln!("  {d}");
                }
            }
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
