use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{MdpView, ValueFunction};

/// Generating function `h` for zero-mean penalties. On time-embedded states
/// it encodes the whole sequence `h_1..h_T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PenaltyGenerator(Vec<f64>);

impl PenaltyGenerator {
    pub fn new(values: Vec<f64>) -> Self {
        PenaltyGenerator(values)
    }

    pub fn zero(n: usize) -> Self {
        PenaltyGenerator(vec![0.0; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn at(&self, x: usize) -> f64 {
        self.0[x]
    }

    /// Shape and terminal-zero check against a view.
    pub fn check(&self, view: &MdpView) -> Result<()> {
        if self.0.len() != view.n_states() {
            return Err(Error::Dimension(format!(
                "generator has {} entries, view has {} states",
                self.0.len(),
                view.n_states()
            )));
        }
        if let Some(x) = self.0.iter().position(|v| !v.is_finite()) {
            return Err(Error::Config(format!("generator is not finite at state {x}")));
        }
        if let Some(t) = view.terminal() {
            if self.0[t] != 0.0 {
                return Err(Error::Config(format!("generator must vanish at terminal state {t}")));
            }
        }
        Ok(())
    }

    /// `E[h(next) | x, a]` for every state and action of the view.
    pub(crate) fn expectations(&self, view: &MdpView) -> Vec<Vec<f64>> {
        (0..view.n_states())
            .map(|x| (0..view.n_actions(x)).map(|a| view.expected(x, a, &self.0)).collect())
            .collect()
    }
}

impl From<ValueFunction> for PenaltyGenerator {
    fn from(v: ValueFunction) -> Self {
        PenaltyGenerator(v.0)
    }
}

/// `z = sum_j p(j|x,a) h(j) - h(realized_next)`: zero conditional mean under
/// the true dynamics, so any non-anticipative policy pays nothing on average.
pub fn make_penalty_term(view: &MdpView, h: &PenaltyGenerator, x: usize, a: usize, realized_next: usize) -> Result<f64> {
    let row = view.kernel(x, a);
    if row[realized_next] <= 0.0 {
        return Err(Error::SupportViolation { state: x, action: a, next: realized_next });
    }
    Ok(view.expected(x, a, h.values()) - h.at(realized_next))
}
