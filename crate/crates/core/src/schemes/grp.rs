//! Generalized Riemann problem solver for linear advection, c > 0.
//!
//! A procedural step, independent of the coefficient-table machinery: it
//! reconstructs, solves the interface Riemann problem, evolves midpoint
//! fluxes and updates both moments. Kept deliberately separate from
//! `apply_rule` so the equivalence with the one-stage second-order compact
//! scheme is a genuine cross-check of two routes.

use crate::error::{CoreError, Result};
use crate::field::TwoMomentField;
use crate::rule::TwoMomentRule;
use crate::schemes::{cgks, SchemeId};

/// One GRP step at CFL number `nu in (0, 1]`.
pub fn grp_step(field: &TwoMomentField, nu: f64) -> Result<TwoMomentField> {
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(CoreError::Domain(format!(
            "GRP step requires nu in (0, 1], got {nu}"
        )));
    }
    let n = field.n_cells();
    let mut out = field.clone();

    // Step 1: interface Riemann values. The wave moves right, so the value
    // at x_{j+1/2} is the trace of cell j's linear reconstruction,
    // u_{j+1/2} = ubar_j + (h/2) s_j, with s_j = v_j / h.
    // Step 2: instantaneous time derivative -c s_j; midpoint value and flux.
    // All quantities below carry the dt scaling, i.e. rate_j = dt * du/dt.
    let riemann = |j: usize| field.ubar[j] + 0.5 * field.v[j];
    let rate = |j: usize| -nu * field.v[j]; // dt * (-c s_j) = -nu v_j

    for j in 0..n {
        let jm = (j + n - 1) % n;
        // Step 2 midpoint values at both interfaces of cell j
        let mid_right = riemann(j) + 0.5 * rate(j);
        let mid_left = riemann(jm) + 0.5 * rate(jm);
        // Step 3: conservative average update with midpoint fluxes
        out.ubar[j] = field.ubar[j] - nu * (mid_right - mid_left);
        // Step 3: slope from the time-evolved interface values; the value
        // difference across cell j's own reconstruction is v_j, the
        // evolution increments come from the upwind interface rates
        out.v[j] = field.v[j] + (rate(j) - rate(jm));
    }
    Ok(out)
}

/// The GRP scheme as a coefficient table (identical to the one-stage
/// second-order compact rule; `grp_step` stays the independent route).
pub fn rule() -> TwoMomentRule {
    let s = cgks::s1o2();
    TwoMomentRule::new(
        SchemeId::GRP,
        s.a().clone(),
        s.b().clone(),
        s.c().clone(),
        s.d().clone(),
    )
}
