//! Stencil-operator algebra used to derive rules from semi-discrete forms.
//!
//! A [`MomentOp`] is a translation-invariant linear functional of the grid
//! state `(ubar, v)` with exact-rational-polynomial weights: the value it
//! produces at cell (or interface) `i` is
//! `sum_m u[m](nu) ubar_{i+m} + sum_m v[m](nu) v_{i+m}`.
//! Composition of such functionals stays in the same class, which is all the
//! scheme assembly needs.

use crate::nu_poly::{NuPolynomial, Rat};
use std::collections::BTreeMap;

pub type Weights = BTreeMap<i32, NuPolynomial>;

#[derive(Debug, Clone, Default)]
pub struct MomentOp {
    pub u: Weights,
    pub v: Weights,
}

impl MomentOp {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The identity on the average component.
    pub fn ubar() -> Self {
        let mut u = Weights::new();
        u.insert(0, NuPolynomial::one());
        Self {
            u,
            v: Weights::new(),
        }
    }

    /// The identity on the derivative component.
    pub fn v() -> Self {
        let mut v = Weights::new();
        v.insert(0, NuPolynomial::one());
        Self {
            u: Weights::new(),
            v,
        }
    }

    pub fn add_assign_scaled(&mut self, rhs: &MomentOp, s: &NuPolynomial) {
        for (m, p) in &rhs.u {
            let cur = self.u.entry(*m).or_insert_with(NuPolynomial::zero);
            *cur = &*cur + &(p * s);
        }
        for (m, p) in &rhs.v {
            let cur = self.v.entry(*m).or_insert_with(NuPolynomial::zero);
            *cur = &*cur + &(p * s);
        }
    }

    pub fn scaled(&self, s: &NuPolynomial) -> Self {
        let mut out = Self::zero();
        out.add_assign_scaled(self, s);
        out
    }

    pub fn shifted(&self, k: i32) -> Self {
        Self {
            u: self.u.iter().map(|(m, p)| (m + k, p.clone())).collect(),
            v: self.v.iter().map(|(m, p)| (m + k, p.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &MomentOp) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &NuPolynomial::constant(Rat::from_integer(-1)));
        out.prune();
        out
    }

    /// Difference across a cell: `self_{i+1/2} - self_{i-1/2}` for
    /// interface-indexed operators.
    pub fn interface_difference(&self) -> Self {
        self.sub(&self.shifted(-1))
    }

    /// Re-express this functional over a *derived* state whose components
    /// are themselves operators on the base state.
    pub fn compose(&self, state_u: &MomentOp, state_v: &MomentOp) -> Self {
        let mut out = Self::zero();
        for (m, p) in &self.u {
            out.add_assign_scaled(&state_u.shifted(*m), p);
        }
        for (m, p) in &self.v {
            out.add_assign_scaled(&state_v.shifted(*m), p);
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.u.retain(|_, p| !p.is_zero());
        self.v.retain(|_, p| !p.is_zero());
    }

    /// Finished weight tables (zero entries dropped).
    pub fn into_tables(mut self) -> (Weights, Weights) {
        self.prune();
        (self.u, self.v)
    }
}

/// Build a linear-combination operator from `(offset, weight)` lists.
pub fn combo(u: &[(i32, Rat)], v: &[(i32, Rat)]) -> MomentOp {
    let mut op = MomentOp::zero();
    for &(m, w) in u {
        op.u.insert(m, NuPolynomial::constant(w));
    }
    for &(m, w) in v {
        op.v.insert(m, NuPolynomial::constant(w));
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nu_poly::rat;

    #[test]
    fn interface_difference_telescopes() {
        // op = ubar_{i+1}: difference gives ubar_{i+1} - ubar_i
        let op = combo(&[(1, rat(1, 1))], &[]);
        let d = op.interface_difference();
        assert_eq!(d.u.get(&1).unwrap().coeff(0), rat(1, 1));
        assert_eq!(d.u.get(&0).unwrap().coeff(0), rat(-1, 1));
    }

    #[test]
    fn compose_substitutes_state() {
        // f = u_{i+1}, state_u = 2*u_i  ->  f(state) = 2*u_{i+1}
        let f = combo(&[(1, rat(1, 1))], &[]);
        let su = combo(&[(0, rat(2, 1))], &[]);
        let g = f.compose(&su, &MomentOp::v());
        assert_eq!(g.u.get(&1).unwrap().coeff(0), rat(2, 1));
    }
}
