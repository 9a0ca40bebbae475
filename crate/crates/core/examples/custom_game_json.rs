//! Build a game from JSON, check it, solve it and evaluate a policy pair.
//!
//! cargo run --example custom_game_json

use zsg_duality::equilibrium::{evaluate_policy_pair, shapley_value_iteration};
use zsg_duality::{GameModel, MixedPolicy};

// Two live states and a discount; A chooses "stay" or "switch", B "guard" or "rest".
const GAME: &str = r#"{
  "n_states": 2,
  "regime": {"type": "discounted", "alpha": 0.9},
  "actions_a": [2, 2],
  "actions_b": [2, 2],
  "transition": [
    [[[0.9, 0.1], [0.5, 0.5]], [[0.2, 0.8], [0.1, 0.9]]],
    [[[0.3, 0.7], [0.6, 0.4]], [[0.8, 0.2], [0.5, 0.5]]]
  ],
  "cost": [
    [[[1, 1], [3, 3]], [[0, 2], [2, 0]]],
    [[[-1, 0], [2, 2]], [[4, 1], [0, 0]]]
  ]
}"#;

fn main() -> zsg_duality::Result<()> {
    let model = GameModel::from_json(GAME)?;
    assert!(model.validate().is_empty());
    let star = shapley_value_iteration(&model, 1e-10, 10_000)?;
    println!("value {:?} after {} sweeps", star.values.as_slice(), star.iterations);
    println!("A: {:?}\nB: {:?}", star.mu.as_rows(), star.nu.as_rows());

    let uniform = MixedPolicy::new(vec![vec![0.5, 0.5]; 2])?;
    println!("uniform pair: {:?}", evaluate_policy_pair(&model, &uniform, &uniform)?.as_slice());

    let mut broken: serde_json::Value = serde_json::from_str(GAME).unwrap();
    broken["transition"][0][0][0] = serde_json::json!([0.5, 0.4]);
    match GameModel::from_json(&broken.to_string()) {
        Err(zsg_duality::Error::Invalid(diags)) => diags.iter().for_each(|d| println!("rejected: {d}")),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
