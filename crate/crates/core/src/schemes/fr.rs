//! Flux reconstruction with N = 1, Radau and g2 correction functions.
//!
//! The rule is derived from the nodal collocation form: flux polynomial
//! interpolated at the solution points, boundary-corrected with `g_L`
//! (the `g_R` term vanishes for upwind flux with c > 0), collocated, then
//! integrated with two-stage Runge-Kutta and finally change-of-basis'd from
//! nodal values to `(ubar, v)`.
//!
//! The Radau correction pairs with Gauss-Legendre solution points and the
//! g2 correction with Gauss-Lobatto points, reproducing the corresponding
//! nodal DG methods. Gauss-Legendre nodes bring `sqrt(3)` into the algebra,
//! so the construction runs over the exact quadratic field Q(sqrt 3); the
//! irrational parts must cancel in the moment basis and that cancellation
//! is asserted.

use crate::error::{CoreError, Result};
use crate::nu_poly::{rat, NuPolynomial, Rat};
use crate::rule::TwoMomentRule;
use crate::schemes::SchemeId;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

// ---------------------------------------------------------------------------
// exact arithmetic in Q(sqrt 3)
// ---------------------------------------------------------------------------

/// `a + b sqrt(3)` with rational `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) struct Q3 {
    pub a: Rat,
    pub b: Rat,
}

impl Q3 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Self { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        Self::new(a, Rat::zero())
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::from_integer(1))
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(self) -> Self {
        // 1/(a + b sqrt3) = (a - b sqrt3) / (a^2 - 3 b^2)
        let norm = self.a * self.a - rat(3, 1) * self.b * self.b;
        assert!(!norm.is_zero(), "division by zero in Q(sqrt3)");
        Self::new(self.a / norm, -self.b / norm)
    }

    /// The rational part, provided the sqrt(3) part has cancelled.
    pub fn expect_rational(self, context: &str) -> Rat {
        assert!(
            self.b.is_zero(),
            "sqrt(3) part failed to cancel in {context}: {self:?}"
        );
        self.a
    }
}

impl Add for Q3 {
    type Output = Q3;
    fn add(self, r: Q3) -> Q3 {
        Q3::new(self.a + r.a, self.b + r.b)
    }
}

impl Sub for Q3 {
    type Output = Q3;
    fn sub(self, r: Q3) -> Q3 {
        Q3::new(self.a - r.a, self.b - r.b)
    }
}

impl Mul for Q3 {
    type Output = Q3;
    fn mul(self, r: Q3) -> Q3 {
        Q3::new(
            self.a * r.a + rat(3, 1) * self.b * r.b,
            self.a * r.b + self.b * r.a,
        )
    }
}

impl Neg for Q3 {
    type Output = Q3;
    fn neg(self) -> Q3 {
        Q3::new(-self.a, -self.b)
    }
}

// ---------------------------------------------------------------------------
// correction functions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrectionKind {
    Radau,
    G2,
}

/// Rational polynomial on the reference interval `xi in [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct XiPolynomial {
    coeffs: Vec<Rat>, // coeffs[k] multiplies xi^k
}

impl XiPolynomial {
    fn new(coeffs: Vec<Rat>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval_rat(&self, xi: Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * xi + c;
        }
        acc
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * xi + crate::nu_poly::ratio_to_f64(*c);
        }
        acc
    }

    fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rat::from_integer(k as i128) * c)
            .collect();
        Self::new(coeffs)
    }

    fn deriv_at_q3(&self, xi: Q3) -> Q3 {
        let d = self.derivative();
        let mut acc = Q3::zero();
        for c in d.coeffs.iter().rev() {
            acc = acc * xi + Q3::from_rat(*c);
        }
        acc
    }

    fn scale(&self, s: Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| *c * s).collect())
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Self, k: usize| p.coeffs.get(k).copied().unwrap_or_else(Rat::zero);
        Self::new((0..n).map(|k| get(self, k) + get(rhs, k)).collect())
    }
}

/// Legendre polynomial `L_n(2 xi - 1)` expanded in powers of `xi`.
fn legendre_on_unit(n: usize) -> XiPolynomial {
    // L_0 = 1, L_1 = eta, L_{k+1} = ((2k+1) eta L_k - k L_{k-1}) / (k+1),
    // with eta = 2 xi - 1.
    let eta = XiPolynomial::new(vec![rat(-1, 1), rat(2, 1)]);
    let mul = |p: &XiPolynomial, q: &XiPolynomial| {
        let mut coeffs = vec![Rat::zero(); p.coeffs.len() + q.coeffs.len() - 1];
        for (i, a) in p.coeffs.iter().enumerate() {
            for (j, b) in q.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + *a * *b;
            }
        }
        XiPolynomial::new(coeffs)
    };
    let mut lk_minus = XiPolynomial::new(vec![rat(1, 1)]);
    if n == 0 {
        return lk_minus;
    }
    let mut lk = eta.clone();
    for k in 1..n {
        let next = mul(&eta, &lk)
            .scale(rat(2 * k as i128 + 1, k as i128 + 1))
            .add(&lk_minus.scale(rat(-(k as i128), k as i128 + 1)));
        lk_minus = lk;
        lk = next;
    }
    lk
}

/// Left/right boundary correction polynomials, degree N + 1 on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct CorrectionFunction {
    pub kind: CorrectionKind,
    pub gl: XiPolynomial,
    pub gr: XiPolynomial,
}

/// Build the N = 1 correction functions from the general Legendre formulas
/// and assert the endpoint conditions that make the corrected flux
/// continuous.
pub fn correction_function(kind: CorrectionKind) -> CorrectionFunction {
    let n = 1usize;
    let ln = legendre_on_unit(n);
    let (gl, gr) = match kind {
        CorrectionKind::Radau => {
            let lnp = legendre_on_unit(n + 1);
            // g_L = ((-1)^N / 2) [L_N - L_{N+1}],  g_R = (1/2) [L_N + L_{N+1}]
            let sign = if n % 2 == 0 { rat(1, 2) } else { rat(-1, 2) };
            (
                ln.add(&lnp.scale(rat(-1, 1))).scale(sign),
                ln.add(&lnp).scale(rat(1, 2)),
            )
        }
        CorrectionKind::G2 => {
            let lnm = legendre_on_unit(n - 1);
            let lnp = legendre_on_unit(n + 1);
            // blend = ((N+1) L_{N-1} + N L_{N+1}) / (2N+1)
            let blend = lnm
                .scale(rat(n as i128 + 1, 2 * n as i128 + 1))
                .add(&lnp.scale(rat(n as i128, 2 * n as i128 + 1)));
            let sign = if n % 2 == 0 { rat(1, 2) } else { rat(-1, 2) };
            (
                ln.add(&blend.scale(rat(-1, 1))).scale(sign),
                ln.add(&blend).scale(rat(1, 2)),
            )
        }
    };
    let cf = CorrectionFunction { kind, gl, gr };
    debug_assert_eq!(cf.gl.eval_rat(rat(0, 1)), rat(1, 1));
    debug_assert_eq!(cf.gl.eval_rat(rat(1, 1)), rat(0, 1));
    debug_assert_eq!(cf.gr.eval_rat(rat(0, 1)), rat(0, 1));
    debug_assert_eq!(cf.gr.eval_rat(rat(1, 1)), rat(1, 1));
    cf
}

// ---------------------------------------------------------------------------
// nodal collocation -> moment rule
// ---------------------------------------------------------------------------

/// Offset-indexed Q3 weights; a 2x2 matrix of them is one linear update of
/// the nodal pair `(u_0, u_1)` per cell.
type Q3Stencil = BTreeMap<i32, Q3>;
type Q3Mat = [[Q3Stencil; 2]; 2];

fn stencil_add(x: &Q3Stencil, y: &Q3Stencil) -> Q3Stencil {
    let mut out = x.clone();
    for (m, w) in y {
        let e = out.entry(*m).or_insert_with(Q3::zero);
        *e = *e + *w;
    }
    out.retain(|_, w| !w.is_zero());
    out
}

fn stencil_mul(x: &Q3Stencil, y: &Q3Stencil) -> Q3Stencil {
    let mut out = Q3Stencil::new();
    for (m1, w1) in x {
        for (m2, w2) in y {
            let e = out.entry(m1 + m2).or_insert_with(Q3::zero);
            *e = *e + *w1 * *w2;
        }
    }
    out.retain(|_, w| !w.is_zero());
    out
}

fn stencil_scale(x: &Q3Stencil, s: Q3) -> Q3Stencil {
    x.iter()
        .map(|(m, w)| (*m, *w * s))
        .filter(|(_, w)| !w.is_zero())
        .collect()
}

fn mat_mul(x: &Q3Mat, y: &Q3Mat) -> Q3Mat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Q3Stencil::new();
            for (k, yk) in y.iter().enumerate() {
                acc = stencil_add(&acc, &stencil_mul(&x[i][k], &yk[j]));
            }
            acc
        })
    })
}

fn scalar(q: Q3) -> Q3Stencil {
    let mut s = Q3Stencil::new();
    if !q.is_zero() {
        s.insert(0, q);
    }
    s
}

/// Assemble the FR rule for one correction function.
pub fn build(kind: CorrectionKind) -> Result<TwoMomentRule> {
    let cf = correction_function(kind);

    // solution points per the nodal DG equivalence
    let (xi0, xi1) = match kind {
        CorrectionKind::Radau => (
            // Gauss-Legendre: 1/2 -+ sqrt(3)/6
            Q3::new(rat(1, 2), rat(-1, 6)),
            Q3::new(rat(1, 2), rat(1, 6)),
        ),
        CorrectionKind::G2 => (Q3::from_rat(rat(0, 1)), Q3::from_rat(rat(1, 1))),
    };
    let span = xi1 - xi0;
    let span_inv = span.inv();

    // Lagrange traces of u_h at the element boundaries
    let l0_at = |xi: Q3| (xi - xi1) * (xi0 - xi1).inv();
    let l1_at = |xi: Q3| (xi - xi0) * (xi1 - xi0).inv();
    let (t0_l, t1_l) = (l0_at(Q3::zero()), l1_at(Q3::zero())); // u_h(0)
    let (t0_r, t1_r) = (l0_at(Q3::one()), l1_at(Q3::one())); // u_h(1)

    // jump at the left boundary: upwind flux minus interior flux value,
    // J = u_h^{prev}(1) - u_h(0); the right correction term vanishes since
    // the upwind flux equals the interior trace there.
    let mut j_u0 = scalar(-t0_l);
    j_u0 = stencil_add(&j_u0, &{
        let mut s = Q3Stencil::new();
        s.insert(-1, t0_r);
        s
    });
    let mut j_u1 = scalar(-t1_l);
    j_u1 = stencil_add(&j_u1, &{
        let mut s = Q3Stencil::new();
        s.insert(-1, t1_r);
        s
    });

    // dt * du_j/dt = -nu [ J gL'(xi_j) + u_h'(xi_j) ]; u_h' = (u1 - u0)/span.
    // The matrix below is the nu-free factor N in dt L = -nu N.
    let gp0 = cf.gl.deriv_at_q3(xi0);
    let gp1 = cf.gl.deriv_at_q3(xi1);
    let mut n_mat: Q3Mat = Default::default();
    for (row, gp) in [(0usize, gp0), (1usize, gp1)] {
        // J g'(xi_row)
        n_mat[row][0] = stencil_scale(&j_u0, gp);
        n_mat[row][1] = stencil_scale(&j_u1, gp);
        // + u_h'
        n_mat[row][0] = stencil_add(&n_mat[row][0], &scalar(-span_inv));
        n_mat[row][1] = stencil_add(&n_mat[row][1], &scalar(span_inv));
    }

    // G = I - nu N + (nu^2/2) N^2, tracked per power of nu
    let n2 = mat_mul(&n_mat, &n_mat);
    let ident: Q3Mat = [
        [scalar(Q3::one()), Q3Stencil::new()],
        [Q3Stencil::new(), scalar(Q3::one())],
    ];
    let powers: [(usize, Rat, &Q3Mat); 3] = [
        (0, rat(1, 1), &ident),
        (1, rat(-1, 1), &n_mat),
        (2, rat(1, 2), &n2),
    ];

    // change of basis: ubar = (u0 + u1)/2 (symmetric nodes), v = (u1 - u0)/span;
    // inverse: u0 = ubar - span v / 2, u1 = ubar + span v / 2.
    let m_fwd = [
        [Q3::from_rat(rat(1, 2)), Q3::from_rat(rat(1, 2))],
        [-span_inv, span_inv],
    ];
    let half_span = span * Q3::from_rat(rat(1, 2));
    let m_inv = [[Q3::one(), -half_span], [Q3::one(), half_span]];

    let mut tables: [BTreeMap<i32, NuPolynomial>; 4] = Default::default();
    for (pow, weight, mat) in powers {
        // M * mat * M^{-1}
        for (i, row) in m_fwd.iter().enumerate() {
            for j in 0..2 {
                let mut entry = Q3Stencil::new();
                for (k, mk) in mat.iter().enumerate() {
                    for (l, cell) in mk.iter().enumerate() {
                        let factor = row[k] * m_inv[l][j];
                        entry = stencil_add(&entry, &stencil_scale(cell, factor));
                    }
                }
                let table = &mut tables[i * 2 + j];
                for (m, w) in entry {
                    let r = w.expect_rational("FR moment-basis coefficient") * weight;
                    let cur = table.entry(m).or_insert_with(NuPolynomial::zero);
                    *cur = &*cur + &NuPolynomial::monomial(r, pow);
                }
            }
        }
    }
    let [a, b, c, d] = tables;
    let id = match kind {
        CorrectionKind::Radau => SchemeId::FR_RK2_RADAU,
        CorrectionKind::G2 => SchemeId::FR_RK2_G2,
    };
    let rule = TwoMomentRule::new(id, a, b, c, d);
    if !rule
        .consistency_check()
        .checks
        .iter()
        .take(2)
        .all(|c| c.passed)
    {
        return Err(CoreError::UnsupportedScheme(format!(
            "FR {kind:?} assembly violated the sum identities"
        )));
    }
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::dg;

    #[test]
    fn q3_arithmetic() {
        let s3 = Q3::new(rat(0, 1), rat(1, 1));
        assert_eq!(s3 * s3, Q3::from_rat(rat(3, 1)));
        assert_eq!(s3 * s3.inv(), Q3::one());
    }

    #[test]
    fn radau_endpoints_and_midpoint() {
        let cf = correction_function(CorrectionKind::Radau);
        assert_eq!(cf.gl.eval_rat(rat(0, 1)), rat(1, 1));
        assert_eq!(cf.gl.eval_rat(rat(1, 1)), rat(0, 1));
        assert_eq!(cf.gr.eval_rat(rat(1, 1)), rat(1, 1));
        // gL(1/2) = -1/4 for N = 1
        assert_eq!(cf.gl.eval_rat(rat(1, 2)), rat(-1, 4));
    }

    #[test]
    fn g2_endpoints() {
        let cf = correction_function(CorrectionKind::G2);
        assert_eq!(cf.gl.eval_rat(rat(0, 1)), rat(1, 1));
        assert_eq!(cf.gl.eval_rat(rat(1, 1)), rat(0, 1));
        assert_eq!(cf.gr.eval_rat(rat(0, 1)), rat(0, 1));
        assert_eq!(cf.gr.eval_rat(rat(1, 1)), rat(1, 1));
        // g2 corrections are (1-xi)^2 and xi^2 at N = 1
        assert_eq!(cf.gl.coeffs(), &[rat(1, 1), rat(-2, 1), rat(1, 1)]);
        assert_eq!(cf.gr.coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn radau_rule_equals_dg_rk2_exactly() {
        let fr = build(CorrectionKind::Radau).unwrap();
        let dg = dg::rk2();
        assert_eq!(fr.a(), dg.a());
        assert_eq!(fr.b(), dg.b());
        assert_eq!(fr.c(), dg.c());
        assert_eq!(fr.d(), dg.d());
    }

    #[test]
    fn g2_rule_coefficients() {
        let fr = build(CorrectionKind::G2).unwrap();
        // a = {0: 1-nu, -1: nu}; exact one-cell shift at nu = 1
        assert_eq!(fr.a()[&0].coeffs(), &[rat(1, 1), rat(-1, 1)]);
        assert_eq!(fr.a()[&-1].coeffs(), &[rat(0, 1), rat(1, 1)]);
        assert_eq!(fr.b()[&0].coeffs(), &[rat(0, 1), rat(-1, 2), rat(1, 2)]);
        assert_eq!(fr.b()[&-1].coeffs(), &[rat(0, 1), rat(1, 2), rat(-1, 2)]);
        assert_eq!(fr.c()[&0].coeffs(), &[rat(0, 1), rat(2, 1), rat(-2, 1)]);
        assert_eq!(fr.c()[&-1].coeffs(), &[rat(0, 1), rat(-2, 1), rat(2, 1)]);
        assert_eq!(fr.d()[&0].coeffs(), &[rat(1, 1), rat(-1, 1)]);
        assert_eq!(fr.d()[&-1].coeffs(), &[rat(0, 1), rat(-1, 1), rat(2, 1)]);
    }

    #[test]
    fn g2_is_exact_shift_at_unit_cfl() {
        let fr = build(CorrectionKind::G2).unwrap();
        for (m, p) in fr.a() {
            assert_eq!(p.eval_rat(rat(1, 1)), rat(if *m == -1 { 1 } else { 0 }, 1));
        }
        for (_, p) in fr.b() {
            assert_eq!(p.eval_rat(rat(1, 1)), rat(0, 1));
        }
        for (_, p) in fr.c() {
            assert_eq!(p.eval_rat(rat(1, 1)), rat(0, 1));
        }
        for (m, p) in fr.d() {
            assert_eq!(p.eval_rat(rat(1, 1)), rat(if *m == -1 { 1 } else { 0 }, 1));
        }
    }
}
