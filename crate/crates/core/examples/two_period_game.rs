//! The two-period matrix game: equilibrium by Shapley value iteration on the
//! time-embedded model, and a best response to a suboptimal column policy.
//!
//! cargo run --example two_period_game

use zsg_duality::equilibrium::{best_response, continuation_matrix, sandwich, shapley_value_iteration};
use zsg_duality::games::{heuristic_column_policy, two_period_matrix_game};
use zsg_duality::Player;

fn main() -> zsg_duality::Result<()> {
    let model = two_period_matrix_game();
    let star = shapley_value_iteration(&model, 1e-12, 1_000)?;
    println!("state  (t,x)   value   A strategy        B strategy");
    for i in 0..model.n_states() {
        let Some(tag) = model.period_tag(i) else { continue };
        println!(
            "{i:>5}  ({},{})  {:>6.2}   {:<16.3?}  {:.3?}",
            tag.period,
            tag.origin + 1,
            star.values[i],
            star.mu.at(i),
            star.nu.at(i)
        );
    }

    let nu_hat = heuristic_column_policy();
    let br = best_response(&model, &nu_hat, Player::B, 1e-12)?;
    println!("\nA's best response to nu_hat: value {} at the root, action u={}", br.values[0], br.actions[0] + 1);
    println!("continuation matrix at the root: {:?}", continuation_matrix(&model, 0, br.values.as_slice()));

    let s = sandwich(&model, &star.mu, &nu_hat, 1e-12)?;
    println!("J^mu* = {} <= J* = {} <= J^nu_hat = {}", s.lower[0], star.values[0], s.upper[0]);
    Ok(())
}
