//! Perfect-information dual bounds on a best-response value.
//!
//! Fixing B's policy leaves A with a finite-horizon MDP. Revealing the
//! transition uniforms up front and charging the zero-mean penalty built from
//! a generator `h` yields an upper bound on A's value: exact with the true
//! value function, loose otherwise.
//!
//! cargo run --release --example finite_dual_bound

use zsg_duality::equilibrium::solve_view;
use zsg_duality::games::{heuristic_generator, heuristic_column_policy, two_period_matrix_game};
use zsg_duality::relax::{estimate_dual_bound_finite, exact_dual_bound_enumeration, McConfig};
use zsg_duality::Player;

fn main() -> zsg_duality::Result<()> {
    let model = two_period_matrix_game();
    let view = model.fix_player(&heuristic_column_policy(), Player::B)?;
    let exact = solve_view(&view, 1e-12)?;
    println!("best-response value: {}", exact.values[0]);

    let h = heuristic_generator();
    let golden = exact_dual_bound_enumeration(&view, &h)?;
    let mc = estimate_dual_bound_finite(&view, &h, &McConfig::new(10_000, 1))?;
    println!("heuristic h: exact bound {golden:.4}, Monte Carlo {:.4} +- {:.4}", mc.mean, mc.standard_error);

    let strong = estimate_dual_bound_finite(&view, &exact.values.clone().into(), &McConfig::new(1_000, 1))?;
    println!("exact h:     Monte Carlo {} +- {}", strong.mean, strong.standard_error);
    Ok(())
}
