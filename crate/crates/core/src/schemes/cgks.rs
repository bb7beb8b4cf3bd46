//! Compact gas-kinetic scheme, second-order rows.
//!
//! Average rows are the fully discrete updates of the upwind interface
//! value `u_{j+1/2} = ubar_j + v_j/2` pushed through the one-stage
//! second-order (Lax-Wendroff type) or two-stage Runge-Kutta integrator.
//! The derivative row is shared: the interface values evolved one step give
//! `v'_j = v_j + nu (v_{j-1} - v_j)`.

use crate::nu_poly::{rat, NuPolynomial};
use crate::rule::TwoMomentRule;
use crate::schemes::SchemeId;
use std::collections::BTreeMap;

type Table = BTreeMap<i32, NuPolynomial>;

fn poly(coeffs: &[(usize, i128, i128)]) -> NuPolynomial {
    let deg = coeffs.iter().map(|&(k, _, _)| k).max().unwrap_or(0);
    let mut v = vec![rat(0, 1); deg + 1];
    for &(k, n, d) in coeffs {
        v[k] = rat(n, d);
    }
    NuPolynomial::new(v)
}

fn table(entries: &[(i32, &[(usize, i128, i128)])]) -> Table {
    entries.iter().map(|&(m, c)| (m, poly(c))).collect()
}

/// Upwind slope transport shared by both CGKS integrators.
pub(super) fn derivative_row() -> (Table, Table) {
    let c = Table::new();
    let d = table(&[(-1, &[(1, 1, 1)]), (0, &[(0, 1, 1), (1, -1, 1)])]);
    (c, d)
}

/// One-stage second-order rule.
pub fn s1o2() -> TwoMomentRule {
    let a = table(&[(-1, &[(1, 1, 1)]), (0, &[(0, 1, 1), (1, -1, 1)])]);
    // (nu - nu^2)/2 on the upwind slope, mirrored on the local one
    let b = table(&[
        (-1, &[(1, 1, 2), (2, -1, 2)]),
        (0, &[(1, -1, 2), (2, 1, 2)]),
    ]);
    let (c, d) = derivative_row();
    TwoMomentRule::new(SchemeId::CGKS_S1O2, a, b, c, d)
}

/// Two-stage Runge-Kutta rule.
pub fn rk2() -> TwoMomentRule {
    let a = table(&[
        (-2, &[(2, 1, 2)]),
        (-1, &[(1, 1, 1), (2, -1, 1)]),
        (0, &[(0, 1, 1), (1, -1, 1), (2, 1, 2)]),
    ]);
    let b = table(&[
        (-2, &[(2, 1, 2)]),
        (-1, &[(1, 1, 2), (2, -1, 1)]),
        (0, &[(1, -1, 2), (2, 1, 2)]),
    ]);
    let (c, d) = derivative_row();
    TwoMomentRule::new(SchemeId::CGKS_RK2, a, b, c, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nu_poly::rat;

    #[test]
    fn s1o2_matches_printed_coefficients() {
        let rule = s1o2();
        // a_{-1} = nu, a_0 = 1 - nu
        assert_eq!(rule.a()[&-1].coeffs(), &[rat(0, 1), rat(1, 1)]);
        assert_eq!(rule.a()[&0].coeffs(), &[rat(1, 1), rat(-1, 1)]);
        // b_{-1} = nu/2 - nu^2/2, b_0 = -nu/2 + nu^2/2
        assert_eq!(rule.b()[&-1].coeffs(), &[rat(0, 1), rat(1, 2), rat(-1, 2)]);
        assert_eq!(rule.b()[&0].coeffs(), &[rat(0, 1), rat(-1, 2), rat(1, 2)]);
        // d_{-1} = nu, d_0 = 1 - nu; c vanishes
        assert_eq!(rule.d()[&-1].coeffs(), &[rat(0, 1), rat(1, 1)]);
        assert_eq!(rule.d()[&0].coeffs(), &[rat(1, 1), rat(-1, 1)]);
        assert!(rule.c().is_empty());
    }

    #[test]
    fn rk2_matches_printed_coefficients() {
        let rule = rk2();
        assert_eq!(rule.a()[&-2].coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 2)]);
        assert_eq!(rule.a()[&-1].coeffs(), &[rat(0, 1), rat(1, 1), rat(-1, 1)]);
        assert_eq!(
            rule.a()[&0].coeffs(),
            &[rat(1, 1), rat(-1, 1), rat(1, 2)]
        );
        assert_eq!(rule.b()[&-2].coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 2)]);
        assert_eq!(rule.b()[&-1].coeffs(), &[rat(0, 1), rat(1, 2), rat(-1, 1)]);
        assert_eq!(rule.b()[&0].coeffs(), &[rat(0, 1), rat(-1, 2), rat(1, 2)]);
        // derivative row identical to the one-stage scheme's
        assert_eq!(rule.d(), s1o2().d());
        assert!(rule.c().is_empty());
    }

    #[test]
    fn b_terms_cancel_at_unit_cfl_for_s1o2() {
        let rule = s1o2();
        for (_, p) in rule.b() {
            assert_eq!(p.eval_rat(rat(1, 1)), rat(0, 1));
        }
    }
}
