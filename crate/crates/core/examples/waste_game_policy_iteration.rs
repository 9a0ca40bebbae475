//! Naive policy iteration on the waste-inspection game, bracketed by exact
//! best responses to each round's policies.
//!
//! cargo run --release --example waste_game_policy_iteration [sites]

use zsg_duality::equilibrium::{best_response, naive_policy_iteration};
use zsg_duality::games::{uniform_policy, waste_inspection_game, WasteGameConfig};
use zsg_duality::Player;

fn main() -> zsg_duality::Result<()> {
    let sites = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let cfg = WasteGameConfig::with_sites(sites);
    let model = waste_inspection_game(&cfg)?;
    let root = model.initial_state();
    println!("{sites} sites, {} states", model.n_states());

    let mu0 = uniform_policy(&model, Player::A);
    let nu0 = uniform_policy(&model, Player::B);
    let trace = naive_policy_iteration(&model, &mu0, &nu0, 4)?;
    println!(" k   J^(mu,nu)   J^mu (B responds)   J^nu (A responds)");
    for round in &trace.rounds {
        let low = best_response(&model, &round.mu, Player::A, 1e-10)?;
        let up = best_response(&model, &round.nu, Player::B, 1e-10)?;
        println!(
            "{:>2}   {:>9.4}   {:>17.4}   {:>17.4}",
            round.k, round.values[root], low.values[root], up.values[root]
        );
    }
    println!("sup-norm changes: {:?}", trace.deltas);
    Ok(())
}
