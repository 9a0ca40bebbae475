//! Weak-form dual bounds on a game with an absorbing state.
//!
//! Paths are drawn from an action-independent reference kernel and each step
//! is reweighted by the ratio of true to reference probabilities. With the
//! exact best-response value as generator every path returns that value.
//! With a rough generator the ratios compound along long paths and the
//! estimate degrades quickly.
//!
//! cargo run --release --example ssp_weak_form

use zsg_duality::equilibrium::{evaluate_policy_pair, solve_view};
use zsg_duality::games::{uniform_policy, waste_inspection_game, WasteGameConfig};
use zsg_duality::relax::{estimate_dual_bound_ssp, make_uniform_reference, simulate_q_path, McConfig};
use zsg_duality::Player;

fn main() -> zsg_duality::Result<()> {
    let model = waste_inspection_game(&WasteGameConfig::with_sites(3))?;
    let root = model.initial_state();
    let q = make_uniform_reference(&model)?;
    println!("one reference path: {:?}", simulate_q_path(&q, root, 3, 1_000)?);

    let mu = uniform_policy(&model, Player::A);
    let nu = uniform_policy(&model, Player::B);
    let pair = evaluate_policy_pair(&model, &mu, &nu)?;
    for (who, fixed, side) in [(Player::A, &mu, "lower"), (Player::B, &nu, "upper")] {
        let view = model.fix_player(fixed, who)?;
        let exact = solve_view(&view, 1e-13)?.values;
        let tight = estimate_dual_bound_ssp(&view, &exact.clone().into(), &q, &McConfig::new(500, 1))?;
        let rough = estimate_dual_bound_ssp(&view, &pair.clone().into(), &q, &McConfig::new(500, 1))?;
        println!(
            "{side}: best response {:.4}; exact h -> {:.4} +- {:.1e}; pair-value h -> {:.4e} +- {:.1e}",
            exact[root], tight.mean, tight.standard_error, rough.mean, rough.standard_error
        );
    }
    Ok(())
}
