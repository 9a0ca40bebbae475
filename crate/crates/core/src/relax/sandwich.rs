use serde::Serialize;

use super::estimate::{DualEstimate, McConfig};
use super::finite::estimate_dual_bound_finite;
use super::penalty::PenaltyGenerator;
use super::ssp::{estimate_dual_bound_ssp, ReferenceMeasure};
use crate::error::{Error, Result};
use crate::game::{GameModel, MdpView, MixedPolicy, Player, Regime};

#[derive(Clone, Debug, Serialize)]
pub struct DualSandwich {
    /// Lower bound on B's best-response value against `mu_hat`.
    pub lower: DualEstimate,
    /// Upper bound on A's best-response value against `nu_hat`.
    pub upper: DualEstimate,
}

/// Reference measures for the two sides of an SSP dual sandwich. They may differ.
#[derive(Clone, Copy, Debug)]
pub struct ReferencePair<'a> {
    pub lower: &'a ReferenceMeasure,
    pub upper: &'a ReferenceMeasure,
}

impl<'a> ReferencePair<'a> {
    pub fn same(q: &'a ReferenceMeasure) -> Self {
        ReferencePair { lower: q, upper: q }
    }
}

/// Estimates a dual bound for one view, dispatching on its regime.
pub fn estimate_view_bound(
    view: &MdpView,
    h: &PenaltyGenerator,
    q: Option<&ReferenceMeasure>,
    cfg: &McConfig,
) -> Result<DualEstimate> {
    match view.regime() {
        Regime::Embedded { .. } => estimate_dual_bound_finite(view, h, cfg),
        Regime::Ssp { .. } => {
            let q = q.ok_or_else(|| Error::Config("SSP bounds need a reference measure".into()))?;
            estimate_dual_bound_ssp(view, h, q, cfg)
        }
        _ => Err(Error::WrongRegime { expected: "embedded finite-horizon or SSP" }),
    }
}

/// Dual lower bound around `mu_hat` (B responds) and dual upper bound around
/// `nu_hat` (A responds). Both sides use the same seed.
pub fn dual_sandwich(
    model: &GameModel,
    mu_hat: &MixedPolicy,
    nu_hat: &MixedPolicy,
    h_lower: &PenaltyGenerator,
    h_upper: &PenaltyGenerator,
    q: Option<ReferencePair<'_>>,
    cfg: &McConfig,
) -> Result<DualSandwich> {
    let low_view = model.fix_player(mu_hat, Player::A)?;
    let up_view = model.fix_player(nu_hat, Player::B)?;
    let lower = estimate_view_bound(&low_view, h_lower, q.map(|p| p.lower), cfg)?;
    let upper = estimate_view_bound(&up_view, h_upper, q.map(|p| p.upper), cfg)?;
    Ok(DualSandwich { lower, upper })
}
