//! Solve one-shot zero-sum matrix games: the row player maximizes.
//!
//! cargo run --example matrix_game

use zsg_duality::matrix;

fn show(name: &str, r: &[Vec<f64>]) -> zsg_duality::Result<()> {
    let sol = matrix::solve(r)?;
    println!("{name}: value {:.6}", sol.value);
    println!("  row strategy    {:?}", sol.row_strategy);
    println!("  column strategy {:?}", sol.col_strategy);
    Ok(())
}

fn main() -> zsg_duality::Result<()> {
    show("rock-paper-scissors", &[vec![0.0, -1.0, 1.0], vec![1.0, 0.0, -1.0], vec![-1.0, 1.0, 0.0]])?;
    show("matching pennies, skewed", &[vec![6.0, 2.0], vec![4.0, 8.0]])?;
    show("saddle point", &[vec![3.0, 1.0, 4.0], vec![5.0, 2.0, 6.0]])?;

    // payoff of given mixed strategies
    let v = matrix::value_of(&[vec![6.0, 2.0], vec![4.0, 8.0]], &[0.5, 0.5], &[0.75, 0.25])?;
    println!("fixed strategies pay {v}");
    Ok(())
}
