//! Periodic two-moment grid state.

use crate::error::{CoreError, Result};

/// Cell averages plus scaled derivative averages `v_j = h * (u_x)_j` on a
/// uniform periodic grid. Index arithmetic is modulo `n_cells` everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoMomentField {
    pub ubar: Vec<f64>,
    pub v: Vec<f64>,
    h: f64,
}

impl TwoMomentField {
    /// Minimum 4 cells: the widest second-order stencil reaches offset -2.
    pub const MIN_CELLS: usize = 4;

    pub fn new(ubar: Vec<f64>, v: Vec<f64>, h: f64) -> Result<Self> {
        if ubar.len() < Self::MIN_CELLS || ubar.len() != v.len() {
            return Err(CoreError::FieldTooSmall(ubar.len().min(v.len())));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(CoreError::Domain(format!("cell size h = {h}")));
        }
        for (j, x) in ubar.iter().chain(v.iter()).enumerate() {
            if !x.is_finite() {
                return Err(CoreError::NonFinite(j % ubar.len()));
            }
        }
        Ok(Self { ubar, v, h })
    }

    pub fn zeros(n_cells: usize, h: f64) -> Result<Self> {
        Self::new(vec![0.0; n_cells], vec![0.0; n_cells], h)
    }

    pub fn n_cells(&self) -> usize {
        self.ubar.len()
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Periodic lookup of the cell average at `j + m`.
    #[inline]
    pub fn ubar_at(&self, j: usize, m: i32) -> f64 {
        self.ubar[self.wrap(j, m)]
    }

    /// Periodic lookup of the scaled derivative at `j + m`.
    #[inline]
    pub fn v_at(&self, j: usize, m: i32) -> f64 {
        self.v[self.wrap(j, m)]
    }

    #[inline]
    fn wrap(&self, j: usize, m: i32) -> usize {
        let n = self.ubar.len() as i64;
        (((j as i64 + m as i64) % n + n) % n) as usize
    }

    /// Cyclic shift by `k` cells (positive shifts move data to higher index).
    pub fn shifted(&self, k: i32) -> Self {
        let n = self.n_cells();
        let mut out = self.clone();
        for j in 0..n {
            let src = self.wrap(j, -k);
            out.ubar[j] = self.ubar[src];
            out.v[j] = self.v[src];
        }
        out
    }

    pub fn max_abs_ubar(&self) -> f64 {
        self.ubar.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn sum_ubar(&self) -> f64 {
        self.ubar.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_nonfinite() {
        assert!(TwoMomentField::new(vec![0.0; 3], vec![0.0; 3], 0.1).is_err());
        assert!(TwoMomentField::new(vec![0.0, f64::NAN, 0.0, 0.0], vec![0.0; 4], 0.1).is_err());
        assert!(TwoMomentField::new(vec![0.0; 4], vec![0.0; 4], -1.0).is_err());
    }

    #[test]
    fn periodic_indexing() {
        let f = TwoMomentField::new(vec![1.0, 2.0, 3.0, 4.0], vec![0.0; 4], 0.25).unwrap();
        assert_eq!(f.ubar_at(0, -1), 4.0);
        assert_eq!(f.ubar_at(3, 2), 2.0);
        assert_eq!(f.ubar_at(0, -9), 4.0);
    }

    #[test]
    fn shift_roundtrip() {
        let f = TwoMomentField::new(vec![1.0, 2.0, 3.0, 4.0], vec![4.0, 3.0, 2.0, 1.0], 0.25)
            .unwrap();
        assert_eq!(f.shifted(1).shifted(-1), f);
        assert_eq!(f.shifted(1).ubar, vec![4.0, 1.0, 2.0, 3.0]);
    }
}
