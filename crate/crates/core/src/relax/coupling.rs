use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Smallest `j` whose cumulative probability (ascending index) strictly
/// exceeds `w`. Feeding the same `w` to different rows couples them through
/// common random numbers.
pub fn inverse_cdf_transition(row: &[f64], w: f64) -> usize {
    let mut acc = 0.0;
    for (j, &p) in row.iter().enumerate() {
        acc += p;
        if acc > w && p > 0.0 {
            return j;
        }
    }
    // Rounding left the total just under w: take the last supported state.
    row.iter().rposition(|&p| p > 0.0).unwrap_or(row.len() - 1)
}

/// Independent stream number `index` under `seed`. Each scenario or path
/// draws from its own stream, so results do not depend on scheduling.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniforms `w_1..w_T` driving the transitions of one finite-horizon path.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario(Vec<f64>);

impl Scenario {
    pub fn new(uniforms: Vec<f64>) -> Result<Self> {
        if let Some(w) = uniforms.iter().find(|w| !(0.0..1.0).contains(*w)) {
            return Err(Error::Config(format!("scenario entry {w} outside [0,1)")));
        }
        Ok(Scenario(uniforms))
    }

    pub fn draw(horizon: usize, rng: &mut impl Rng) -> Self {
        Scenario((0..horizon).map(|_| rng.random::<f64>()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Uniform driving the transition out of period `t` (0-based), i.e. `w_{t+1}`.
    pub fn at(&self, t: usize) -> f64 {
        self.0[t]
    }
}
