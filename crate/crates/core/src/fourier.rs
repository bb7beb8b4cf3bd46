//! Two-moment von Neumann analysis: amplification matrices, spectra,
//! CFL limits and the closed-form eigenvalue oracles.

use crate::error::{CoreError, Result};
use crate::rule::TwoMomentRule;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Stability slack in `max |rho| <= 1 + EPSILON`. The problem is linear
/// with constant coefficients, so genuine stability means radius <= 1;
/// the slack only absorbs rounding.
pub const DEFAULT_EPSILON: f64 = 1e-10;

/// Default wavenumber sampling for radius sweeps.
pub const DEFAULT_N_THETA: usize = 2048;

/// The 2x2 amplification matrix `G(theta, nu)` of one rule:
/// `g11 = sum a_m e^{im theta}` and so on per entry.
#[derive(Debug, Clone, Copy)]
pub struct AmplificationMatrix {
    pub theta: f64,
    pub nu: f64,
    pub g11: Complex64,
    pub g12: Complex64,
    pub g21: Complex64,
    pub g22: Complex64,
}

impl AmplificationMatrix {
    pub fn trace(&self) -> Complex64 {
        self.g11 + self.g22
    }

    pub fn det(&self) -> Complex64 {
        self.g11 * self.g22 - self.g12 * self.g21
    }
}

fn g_from_weights(
    weights: &[(i32, f64, f64, f64, f64)],
    theta: f64,
    nu: f64,
) -> AmplificationMatrix {
    let mut g = [Complex64::new(0.0, 0.0); 4];
    for &(m, wa, wb, wc, wd) in weights {
        let phase = Complex64::from_polar(1.0, m as f64 * theta);
        g[0] += wa * phase;
        g[1] += wb * phase;
        g[2] += wc * phase;
        g[3] += wd * phase;
    }
    AmplificationMatrix {
        theta,
        nu,
        g11: g[0],
        g12: g[1],
        g21: g[2],
        g22: g[3],
    }
}

/// Assemble `G(theta, nu)` from a rule.
pub fn assemble_g(rule: &TwoMomentRule, theta: f64, nu: f64) -> AmplificationMatrix {
    g_from_weights(&rule.weights_at(nu), theta, nu)
}

/// Both roots of `lambda^2 - tr lambda + det = 0`, computed with a
/// sign-matched quadratic formula: the larger-magnitude root comes from
/// `(tr + s)/2` with `s` oriented along `tr`, the other from `det / root`.
pub fn eigen2x2(g: &AmplificationMatrix) -> (Complex64, Complex64) {
    let tr = g.trace();
    let det = g.det();
    // tr^2 - 4 det evaluated as (g11 - g22)^2 + 4 g12 g21: the direct form
    // cancels catastrophically for near-defective matrices
    let delta = g.g11 - g.g22;
    let disc = (delta * delta + 4.0 * g.g12 * g.g21).sqrt();
    // orient the square root so tr and disc do not cancel
    let s = if (tr * disc.conj()).re >= 0.0 { disc } else { -disc };
    let r1 = 0.5 * (tr + s);
    let r2 = if r1.norm() > 0.0 { det / r1 } else { 0.5 * (tr - s) };
    (r1, r2)
}

/// One spectrum point: eigenvalues labelled physical/spurious.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumSample {
    pub theta: f64,
    pub rho1_re: f64,
    pub rho1_im: f64,
    pub rho2_re: f64,
    pub rho2_im: f64,
    pub max_modulus: f64,
}

impl SpectrumSample {
    pub fn rho1(&self) -> Complex64 {
        Complex64::new(self.rho1_re, self.rho1_im)
    }

    pub fn rho2(&self) -> Complex64 {
        Complex64::new(self.rho2_re, self.rho2_im)
    }
}

/// Eigenvalue loci over a uniform theta grid on `[0, 2 pi]`.
///
/// Branch labels are assigned by continuity: the physical branch starts at
/// the eigenvalue equal to 1 at `theta = 0` (the consistency identity) and
/// subsequent samples pair with whichever assignment minimizes the total
/// jump from the previous sample.
pub fn spectrum(rule: &TwoMomentRule, nu: f64, n_theta: usize) -> Vec<SpectrumSample> {
    let weights = rule.weights_at(nu);
    let mut out = Vec::with_capacity(n_theta);
    let mut prev: Option<(Complex64, Complex64)> = None;
    for k in 0..n_theta {
        let theta = 2.0 * PI * k as f64 / (n_theta - 1).max(1) as f64;
        let (e1, e2) = eigen2x2(&g_from_weights(&weights, theta, nu));
        let (p1, p2) = match prev {
            None => {
                // at theta = 0 the physical branch equals 1 exactly
                let one = Complex64::new(1.0, 0.0);
                if (e1 - one).norm() <= (e2 - one).norm() {
                    (e1, e2)
                } else {
                    (e2, e1)
                }
            }
            Some((q1, q2)) => {
                let keep = (e1 - q1).norm() + (e2 - q2).norm();
                let swap = (e2 - q1).norm() + (e1 - q2).norm();
                if keep <= swap {
                    (e1, e2)
                } else {
                    (e2, e1)
                }
            }
        };
        prev = Some((p1, p2));
        out.push(SpectrumSample {
            theta,
            rho1_re: p1.re,
            rho1_im: p1.im,
            rho2_re: p2.re,
            rho2_im: p2.im,
            max_modulus: p1.norm().max(p2.norm()),
        });
    }
    out
}

/// Max spectral radius over `theta in [0, 2 pi)`: uniform grid scan plus
/// golden-section refinement around the discrete maximizer.
pub fn spectral_radius(rule: &TwoMomentRule, nu: f64, n_theta: usize) -> Result<f64> {
    if n_theta < 256 {
        return Err(CoreError::Domain(format!(
            "n_theta = {n_theta} too coarse (minimum 256)"
        )));
    }
    let weights = rule.weights_at(nu);
    let radius_at = |theta: f64| -> f64 {
        let (e1, e2) = eigen2x2(&g_from_weights(&weights, theta, nu));
        e1.norm().max(e2.norm())
    };
    let step = 2.0 * PI / n_theta as f64;
    let mut best = (0.0f64, 0usize);
    for k in 0..n_theta {
        let r = radius_at(k as f64 * step);
        if r > best.0 {
            best = (r, k);
        }
    }
    // refine on the bracket around the grid maximizer
    let (mut lo, mut hi) = (
        (best.1 as f64 - 1.0) * step,
        (best.1 as f64 + 1.0) * step,
    );
    let inv_phi = 0.618_033_988_749_894_9;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (radius_at(x1), radius_at(x2));
    for _ in 0..64 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = radius_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = radius_at(x1);
        }
    }
    Ok(best.0.max(f1).max(f2))
}

/// Result of a CFL-limit search.
#[derive(Debug, Clone, Serialize)]
pub struct CflResult {
    pub scheme_id: String,
    pub nu_star: f64,
    pub bisection_tol: f64,
    pub n_theta: usize,
    pub epsilon: f64,
}

/// Bisect for the largest `nu` with spectral radius `<= 1 + epsilon`,
/// bracketing over `[0, 4]`.
pub fn cfl_limit(
    rule: &TwoMomentRule,
    tol: f64,
    epsilon: f64,
    n_theta: usize,
) -> Result<CflResult> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(CoreError::Domain(format!("bisection tol {tol}")));
    }
    let stable = |nu: f64| -> Result<bool> {
        Ok(spectral_radius(rule, nu, n_theta)? <= 1.0 + epsilon)
    };
    if !stable(tol)? {
        return Err(CoreError::UnstableAtAllNu(tol));
    }
    let (mut lo, mut hi) = (tol, 4.0);
    if stable(hi)? {
        // stable across the whole bracket; report the bracket end
        return Ok(CflResult {
            scheme_id: rule.scheme().to_string(),
            nu_star: hi,
            bisection_tol: tol,
            n_theta,
            epsilon,
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if stable(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CflResult {
        scheme_id: rule.scheme().to_string(),
        nu_star: 0.5 * (lo + hi),
        bisection_tol: tol,
        n_theta,
        epsilon,
    })
}

/// Closed-form eigenvalue of the one-stage second-order scheme:
/// `rho = 1 - nu (1 - e^{-i theta})`.
pub fn s1o2_closed_form(theta: f64, nu: f64) -> Complex64 {
    let e = Complex64::from_polar(1.0, -theta);
    Complex64::new(1.0, 0.0) - nu * (Complex64::new(1.0, 0.0) - e)
}

/// Closed-form eigenvalue of the two-stage Runge-Kutta scheme:
/// `rho = 1 + nu (e^{-i theta} - 1) + (nu^2/2)(e^{-i theta} - 1)^2`.
pub fn rk2_closed_form(theta: f64, nu: f64) -> Complex64 {
    let z = Complex64::from_polar(1.0, -theta) - Complex64::new(1.0, 0.0);
    Complex64::new(1.0, 0.0) + nu * z + 0.5 * nu * nu * z * z
}

/// Largest stable `nu` of the RK2 branch at a fixed wavenumber: the unique
/// real root of `nu^3 - 2 nu^2 + 2 nu - (1 + 1/tan^2(theta/2)) = 0`.
///
/// The cubic is strictly increasing (`3 nu^2 - 4 nu + 2 > 0`), so the
/// minimum real root is the only one. At `theta = pi` the bound is exactly
/// 1; it grows without bound as `theta` approaches 0 or `2 pi`.
pub fn rk2_stability_bound(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < 2.0 * PI) {
        return Err(CoreError::Domain(format!(
            "stability bound defined on (0, 2 pi), got {theta}"
        )));
    }
    if (theta - PI).abs() < 1e-300 {
        return Ok(1.0);
    }
    let t = (0.5 * theta).tan();
    let kappa = 1.0 + 1.0 / (t * t);
    let f = |x: f64| ((x - 2.0) * x + 2.0) * x - kappa;
    let fp = |x: f64| (3.0 * x - 4.0) * x + 2.0;
    // monotone cubic: bracket then safeguarded Newton
    let mut lo = 1.0;
    let mut hi = kappa.max(2.0) + 1.0;
    debug_assert!(f(lo) <= 0.0 && f(hi) > 0.0);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx.abs() < 1e-14 * kappa.max(1.0) {
            break;
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let step = fx / fp(x);
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    Ok(x)
}

/// Exact-solution symbol `e^{-i nu theta}` for reference.
pub fn exact_symbol(theta: f64, nu: f64) -> Complex64 {
    Complex64::from_polar(1.0, -nu * theta)
}
