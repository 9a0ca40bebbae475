//! Exact solvers and information-relaxation dual bounds for small dynamic
//! zero-sum games.
//!
//! - [`game`]: game model, mixed policies, reduction to one-player views
//! - [`matrix`]: simplex solver for one-shot matrix games
//! - [`equilibrium`]: Shapley value iteration, best responses, naive policy
//!   iteration, best-response sandwich
//! - [`relax`]: perfect-information and weak-form dual bounds with seeded
//!   Monte Carlo estimation
//! - [`games`]: the two-period matrix game and the waste-inspection game
//! - [`experiment`]: game sources, reproduction runs and CSV/JSON output
//!   used by the `zsg` binary
//!
//! Runnable examples (`cargo run --release --example <name>`):
//! `matrix_game`, `two_period_game`, `finite_dual_bound`,
//! `waste_game_policy_iteration`, `ssp_weak_form`, `custom_game_json`.

pub mod equilibrium;
pub mod error;
pub mod experiment;
pub mod game;
pub mod games;
pub mod matrix;
pub mod relax;

pub use error::{Error, Result};
pub use game::{GameModel, MdpView, MixedPolicy, Orientation, Player, Regime, ValueFunction};
