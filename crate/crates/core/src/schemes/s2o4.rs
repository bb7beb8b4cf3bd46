//! Two-stage fourth-order compact scheme (CGKS-S2O4).
//!
//! Per time step, at every interface `i+1/2`:
//!
//! * reconstruct the upwind point value `W` from the compact Hermite
//!   formula (three averages, two slopes; exact through quartics) and the
//!   interface derivatives `W_x`, `W_xx` from the four-average formulas;
//! * stage 1 (`t* = t + dt/2`): cell averages take a half step of the flux
//!   plus an eighth of a step of the flux slope; interface values move
//!   linearly along the characteristic (the per-stage flux is linear in
//!   time), and the stage slopes are re-projected from them;
//! * stage 2: re-reconstruct on the stage state, combine flux slopes with
//!   weights 1/3 and 2/3 for the average update, and build fourth-order
//!   interface values at `t + dt` from the two-stage curvature combination;
//! * new slopes are the differences of those interface values — the
//!   interface values are the initial data for the next reconstruction, so
//!   the derivative row re-projects rather than increments. That
//!   re-projection is what keeps the slope field stable; it also means the
//!   nu = 0 action of the derivative row is a projection, not the identity.

use crate::nu_poly::{rat, NuPolynomial, Rat};
use crate::rule::TwoMomentRule;
use crate::schemes::ops::{combo, MomentOp};
use crate::schemes::SchemeId;

struct Reconstruction {
    /// Upwind interface point value `W_{i+1/2}`.
    point: MomentOp,
    /// Scaled first derivative `h W_x` at the interface.
    dx: MomentOp,
    /// Scaled second derivative `h^2 W_xx` at the interface.
    dxx: MomentOp,
}

/// The three linear reconstruction formulas, applied to an arbitrary
/// derived state `(state_u, state_v)`.
fn reconstruct(state_u: &MomentOp, state_v: &MomentOp) -> Reconstruction {
    let point = combo(
        &[(-1, rat(-23, 120)), (0, rat(19, 30)), (1, rat(67, 120))],
        &[(-1, rat(-3, 40)), (1, rat(-7, 40))],
    )
    .compose(state_u, state_v);
    let dx = combo(
        &[
            (-1, rat(1, 12)),
            (0, rat(-5, 4)),
            (1, rat(5, 4)),
            (2, rat(-1, 12)),
        ],
        &[],
    )
    .compose(state_u, state_v);
    let mut dxx = combo(
        &[
            (-1, rat(-1, 8)),
            (0, rat(31, 8)),
            (1, rat(31, 8)),
            (2, rat(-1, 8)),
        ],
        &[],
    )
    .compose(state_u, state_v);
    dxx.add_assign_scaled(&point, &NuPolynomial::constant(rat(-15, 2)));
    Reconstruction { point, dx, dxx }
}

fn nu_pow(c: Rat, k: usize) -> NuPolynomial {
    NuPolynomial::monomial(c, k)
}

/// Assemble the fully discrete rule. All coefficients come out as rational
/// polynomials in `nu` of degree <= 4 spanning offsets [-4, 4].
pub fn build() -> TwoMomentRule {
    let base = reconstruct(&MomentOp::ubar(), &MomentOp::v());

    // --- stage 1: t* = t + dt/2 ------------------------------------------
    // cell averages: u* = u + (dt/2) L + (dt^2/8) dL/dt, with
    // dt L = -nu (P_{i+1/2} - P_{i-1/2}) and dt^2 dL/dt = nu^2 (Dx diff).
    let mut star_u = MomentOp::ubar();
    star_u.add_assign_scaled(&base.point.interface_difference(), &nu_pow(rat(-1, 2), 1));
    star_u.add_assign_scaled(&base.dx.interface_difference(), &nu_pow(rat(1, 8), 2));

    // interface values move linearly along the characteristic over dt/2
    // (the per-stage flux is linear in time); stage slopes re-project.
    let mut star_w = base.point.clone();
    star_w.add_assign_scaled(&base.dx, &nu_pow(rat(-1, 2), 1));
    let star_v = star_w.interface_difference();

    // --- stage 2 ----------------------------------------------------------
    let star = reconstruct(&star_u, &star_v);

    // averages: u^{n+1} = u + dt L^n + (dt^2/2) [ (1/3) dL^n + (2/3) dL^* ]
    let mut new_u = MomentOp::ubar();
    new_u.add_assign_scaled(&base.point.interface_difference(), &nu_pow(rat(-1, 1), 1));
    new_u.add_assign_scaled(&base.dx.interface_difference(), &nu_pow(rat(1, 6), 2));
    new_u.add_assign_scaled(&star.dx.interface_difference(), &nu_pow(rat(1, 3), 2));

    // fourth-order interface values at t + dt: the 1/3-2/3 curvature
    // combination reproduces the quartic Taylor expansion in time
    let mut new_w = base.point;
    new_w.add_assign_scaled(&base.dx, &nu_pow(rat(-1, 1), 1));
    new_w.add_assign_scaled(&base.dxx, &nu_pow(rat(1, 6), 2));
    new_w.add_assign_scaled(&star.dxx, &nu_pow(rat(1, 3), 2));
    let new_v = new_w.interface_difference();

    let (a, b) = new_u.into_tables();
    let (c, d) = new_v.into_tables();
    TwoMomentRule::new(SchemeId::CGKS_S2O4, a, b, c, d)
}
