//! Information-relaxation dual bounds on best-response values.
//!
//! Fixing one player's policy leaves the other with a decision problem
//! ([`crate::MdpView`]). Letting the responder see the future and charging a
//! zero-mean penalty built from a generating function `h` gives an
//! optimistic bound on that problem: above its value for the maximizer, below
//! it for the minimizer. Finite-horizon views use the perfect-information
//! relaxation; views with an absorbing state use the weak form with a
//! reference measure.

mod coupling;
mod estimate;
mod finite;
mod penalty;
mod sandwich;
mod ssp;

pub use coupling::{inverse_cdf_transition, stream_rng, Scenario};
pub use estimate::{DualEstimate, McConfig, CONSTANT_SAMPLE_TOL};
pub use finite::{estimate_dual_bound_finite, exact_dual_bound_enumeration, pi_inner_finite, CELL_BUDGET};
pub use penalty::{make_penalty_term, PenaltyGenerator};
pub use sandwich::{dual_sandwich, estimate_view_bound, DualSandwich, ReferencePair};
pub use ssp::{
    estimate_dual_bound_ssp, make_uniform_reference, simulate_q_path, validate_abs_continuity, weak_form_inner_ssp,
    AbsContinuityViolation, ReferenceMeasure, PATH_CAP,
};
