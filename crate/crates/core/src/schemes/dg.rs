//! Discontinuous Galerkin p1, fully discretized in moment variables.
//!
//! The semi-discrete system comes from the Legendre weak form on cell `j`
//! with basis `{1, xi}`, `xi in [-1, 1]`, upwind interface flux
//! `f_{j+1/2} = c (u0_j + u1_j)` and mass matrix `diag(h, h/3)`:
//!
//! ```text
//! d(u0_j)/dt = -(c/h) [ (u0_j + u1_j) - (u0_{j-1} + u1_{j-1}) ]
//! d(u1_j)/dt =  (3c/h) [ u0_j - u1_j - u0_{j-1} - u1_{j-1} ]
//! ```
//!
//! In the moment variables `ubar = u0`, `v = 2 u1` the average equation is
//! the usual upwind flux difference; the first-moment equation supplies the
//! derivative row the fully discrete update formulas leave implicit.

use crate::nu_poly::{rat, NuPolynomial};
use crate::rule::TwoMomentRule;
use crate::schemes::ops::{combo, MomentOp};
use crate::schemes::SchemeId;

fn nu() -> NuPolynomial {
    NuPolynomial::monomial(rat(1, 1), 1)
}

fn half() -> NuPolynomial {
    NuPolynomial::constant(rat(1, 2))
}

/// `dt * L` for both moments: the semi-discrete right-hand side scaled so
/// that one application carries a factor `nu = c dt / h`.
fn semi_discrete() -> (MomentOp, MomentOp) {
    // upwind trace of the p1 polynomial at the right interface of cell j
    let trace = combo(&[(0, rat(1, 1))], &[(0, rat(1, 2))]);
    let lu = trace.interface_difference().scaled(&-&nu());
    // v-row: 6 nu [ ubar_j - ubar_{j-1} - (v_j + v_{j-1})/2 ]
    let lv = combo(
        &[(0, rat(6, 1)), (-1, rat(-6, 1))],
        &[(0, rat(-3, 1)), (-1, rat(-3, 1))],
    )
    .scaled(&nu());
    (lu, lv)
}

/// Two-stage Runge-Kutta composition of the semi-discrete system.
pub fn rk2() -> TwoMomentRule {
    let (lu, lv) = semi_discrete();
    let u0 = MomentOp::ubar();
    let v0 = MomentOp::v();

    // stage 1: w = state + dt L(state)
    let mut w_u = u0.clone();
    w_u.add_assign_scaled(&lu, &NuPolynomial::one());
    let mut w_v = v0.clone();
    w_v.add_assign_scaled(&lv, &NuPolynomial::one());

    // u^{n+1} = u + (dt L(u) + dt L(w)) / 2
    let mut new_u = u0;
    new_u.add_assign_scaled(&lu, &half());
    new_u.add_assign_scaled(&lu.compose(&w_u, &w_v), &half());
    let mut new_v = v0;
    new_v.add_assign_scaled(&lv, &half());
    new_v.add_assign_scaled(&lv.compose(&w_u, &w_v), &half());

    let (a, b) = new_u.into_tables();
    let (c, d) = new_v.into_tables();
    TwoMomentRule::new(SchemeId::DG_RK2, a, b, c, d)
}

/// One-stage second-order composition: `u^{n+1} = u + dt L + dt^2/2 L_t`
/// with the flux time derivative taken from the Lax-Wendroff substitution
/// `u_t = -c u_h,x` evaluated cell-locally (`u_h,x = v_j / h` for p1).
pub fn s1o2() -> TwoMomentRule {
    let (lu, lv) = semi_discrete();
    let nu2 = NuPolynomial::monomial(rat(1, 1), 2);

    // dt^2 L_t, average row: nu^2 (v_j - v_{j-1})
    let lt_u = combo(&[], &[(0, rat(1, 1)), (-1, rat(-1, 1))]).scaled(&nu2);
    // dt^2 L_t, derivative row: 6 nu^2 (v_{j-1} - v_j)
    let lt_v = combo(&[], &[(-1, rat(6, 1)), (0, rat(-6, 1))]).scaled(&nu2);

    let mut new_u = MomentOp::ubar();
    new_u.add_assign_scaled(&lu, &NuPolynomial::one());
    new_u.add_assign_scaled(&lt_u, &half());
    let mut new_v = MomentOp::v();
    new_v.add_assign_scaled(&lv, &NuPolynomial::one());
    new_v.add_assign_scaled(&lt_v, &half());

    let (a, b) = new_u.into_tables();
    let (c, d) = new_v.into_tables();
    TwoMomentRule::new(SchemeId::DG_S1O2, a, b, c, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nu_poly::rat;
    use crate::schemes::cgks;

    #[test]
    fn rk2_average_row_matches_printed_update() {
        // a_{-2} = -nu^2, a_{-1} = nu + 2nu^2, a_0 = 1 - nu - nu^2
        let rule = rk2();
        assert_eq!(rule.a()[&-2].coeffs(), &[rat(0, 1), rat(0, 1), rat(-1, 1)]);
        assert_eq!(rule.a()[&-1].coeffs(), &[rat(0, 1), rat(1, 1), rat(2, 1)]);
        assert_eq!(rule.a()[&0].coeffs(), &[rat(1, 1), rat(-1, 1), rat(-1, 1)]);
        // b_{-2} = -nu^2/2, b_{-1} = nu/2 - nu^2/2, b_0 = -nu/2 + nu^2
        assert_eq!(rule.b()[&-2].coeffs(), &[rat(0, 1), rat(0, 1), rat(-1, 2)]);
        assert_eq!(rule.b()[&-1].coeffs(), &[rat(0, 1), rat(1, 2), rat(-1, 2)]);
        assert_eq!(rule.b()[&0].coeffs(), &[rat(0, 1), rat(-1, 2), rat(1, 1)]);
    }

    #[test]
    fn rk2_derivative_row() {
        let rule = rk2();
        assert_eq!(rule.c()[&0].coeffs(), &[rat(0, 1), rat(6, 1), rat(-12, 1)]);
        assert_eq!(rule.c()[&-1].coeffs(), &[rat(0, 1), rat(-6, 1), rat(6, 1)]);
        assert_eq!(rule.c()[&-2].coeffs(), &[rat(0, 1), rat(0, 1), rat(6, 1)]);
        assert_eq!(rule.d()[&0].coeffs(), &[rat(1, 1), rat(-3, 1), rat(3, 1)]);
        assert_eq!(rule.d()[&-1].coeffs(), &[rat(0, 1), rat(-3, 1), rat(12, 1)]);
        assert_eq!(rule.d()[&-2].coeffs(), &[rat(0, 1), rat(0, 1), rat(3, 1)]);
    }

    #[test]
    fn s1o2_average_row_equals_cgks_s1o2() {
        // the one-stage second-order average update is integrator-shared
        let dg = s1o2();
        let ck = cgks::s1o2();
        assert_eq!(dg.a(), ck.a());
        assert_eq!(dg.b(), ck.b());
    }

    #[test]
    fn s1o2_derivative_row() {
        let rule = s1o2();
        assert_eq!(rule.c()[&0].coeffs(), &[rat(0, 1), rat(6, 1)]);
        assert_eq!(rule.c()[&-1].coeffs(), &[rat(0, 1), rat(-6, 1)]);
        assert_eq!(rule.d()[&0].coeffs(), &[rat(1, 1), rat(-3, 1), rat(-3, 1)]);
        assert_eq!(rule.d()[&-1].coeffs(), &[rat(0, 1), rat(-3, 1), rat(3, 1)]);
    }
}
