//! Mixed equilibria of one-shot matrix games.
//!
//! The row player maximizes `y' R z`, the column player minimizes it. The
//! matrix is shifted so every entry is positive and the column player's
//! problem `max 1'q s.t. R q <= 1, q >= 0` is solved with a dense tableau
//! simplex under Bland's rule. The final tableau yields both strategies: the
//! primal solution gives the column strategy and the slack reduced costs give
//! the row strategy.

use serde::Serialize;

use crate::error::{Error, Result};

/// Pivot elements and reduced costs below this are treated as zero.
pub const PIVOT_TOL: f64 = 1e-10;

const MAX_PIVOTS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixGameSolution {
    pub value: f64,
    pub row_strategy: Vec<f64>,
    pub col_strategy: Vec<f64>,
}

/// `y' R z`.
pub fn value_of(r: &[Vec<f64>], y: &[f64], z: &[f64]) -> Result<f64> {
    if r.len() != y.len() || r.iter().any(|row| row.len() != z.len()) {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, strategies have lengths {} and {}",
            r.len(),
            r.first().map_or(0, Vec::len),
            y.len(),
            z.len()
        )));
    }
    Ok(r.iter()
        .zip(y)
        .map(|(row, yu)| yu * row.iter().zip(z).map(|(a, zv)| a * zv).sum::<f64>())
        .sum())
}

/// Solves the matrix game `r` (rows maximize). When several equilibria exist
/// the vertex reached by Bland's rule is returned.
pub fn solve(r: &[Vec<f64>]) -> Result<MatrixGameSolution> {
    let m = r.len();
    let n = r.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if let Some(bad) = r.iter().position(|row| row.len() != n) {
        return Err(Error::Dimension(format!("row {bad} has {} entries, expected {n}", r[bad].len())));
    }
    let mut lo = f64::INFINITY;
    for (i, row) in r.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
            lo = lo.min(x);
        }
    }
    if m == 1 && n == 1 {
        return Ok(MatrixGameSolution { value: r[0][0], row_strategy: vec![1.0], col_strategy: vec![1.0] });
    }
    let shift = 1.0 - lo;

    let width = n + m;
    let mut tab: Vec<Vec<f64>> = r
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut t = Vec::with_capacity(width + 1);
            t.extend(row.iter().map(|x| x + shift));
            t.extend((0..m).map(|k| if k == i { 1.0 } else { 0.0 }));
            t.push(1.0);
            t
        })
        .collect();
    let mut obj: Vec<f64> = (0..width).map(|j| if j < n { 1.0 } else { 0.0 }).collect();
    let mut basis: Vec<usize> = (n..width).collect();

    let mut pivots = 0;
    while let Some(enter) = obj.iter().position(|&c| c > PIVOT_TOL) {
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in tab.iter().enumerate() {
            let a = row[enter];
            if a <= PIVOT_TOL {
                continue;
            }
            let ratio = row[width] / a;
            leave = match leave {
                None => Some((i, ratio)),
                Some((k, best)) => {
                    let tie = (ratio - best).abs() <= 1e-12 * best.abs().max(1.0);
                    if (!tie && ratio < best) || (tie && basis[i] < basis[k]) {
                        Some((i, ratio))
                    } else {
                        Some((k, best))
                    }
                }
            };
        }
        // Entries are positive so the LP is bounded and a leaving row exists.
        let (p, _) = leave.expect("bounded LP always has a ratio-test winner");
        pivot(&mut tab, &mut obj, p, enter);
        basis[p] = enter;
        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(Error::NoConvergence { iterations: pivots, last_delta: f64::NAN });
        }
    }

    let mut q = vec![0.0; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            q[b] = tab[i][width];
        }
    }
    let p: Vec<f64> = (0..m).map(|i| -obj[n + i]).collect();
    let col_strategy = normalize(q);
    let row_strategy = normalize(p);
    let value = value_of(r, &row_strategy, &col_strategy)?;
    Ok(MatrixGameSolution { value, row_strategy, col_strategy })
}

/// Value of the game only.
pub fn game_value(r: &[Vec<f64>]) -> Result<f64> {
    solve(r).map(|s| s.value)
}

fn pivot(tab: &mut [Vec<f64>], obj: &mut [f64], p: usize, enter: usize) {
    let inv = 1.0 / tab[p][enter];
    for x in tab[p].iter_mut() {
        *x *= inv;
    }
    tab[p][enter] = 1.0;
    let pivot_row = tab[p].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == p {
            continue;
        }
        let f = row[enter];
        if f != 0.0 {
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
            row[enter] = 0.0;
        }
    }
    let f = obj[enter];
    for (x, y) in obj.iter_mut().zip(&pivot_row) {
        *x -= f * y;
    }
    obj[enter] = 0.0;
}

fn normalize(mut w: Vec<f64>) -> Vec<f64> {
    for x in w.iter_mut() {
        // also turns -0.0 into 0.0
        *x = x.max(0.0) + 0.0;
    }
    let s: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= s;
    }
    w
}
