//! Exact-rational polynomials in the CFL number `nu`.
//!
//! Every stencil coefficient of a fully discrete scheme is a polynomial in
//! `nu` of degree at most 4 with rational coefficients. Keeping them exact
//! lets the sum identities (`sum a_m = 1`, `sum c_m = 0`) be checked
//! coefficient-wise and makes structural comparisons like
//! fr-rk2-radau == dg-rk2 bit-stable.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar.
pub type Rat = Ratio<i128>;

/// Shorthand constructor, reduced on creation.
pub fn rat(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

/// Polynomial in `nu`; `coeffs[k]` multiplies `nu^k`. Trailing zeros are
/// stripped so `degree` is the index of the last nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuPolynomial {
    coeffs: Vec<Rat>,
}

impl NuPolynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rat::from_integer(1))
    }

    /// The monomial `c * nu^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).copied().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Exact evaluation at a rational `nu`.
    pub fn eval_rat(&self, nu: Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * nu + c;
        }
        acc
    }

    /// Floating-point evaluation (Horner).
    pub fn eval(&self, nu: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * nu + ratio_to_f64(*c);
        }
        acc
    }

    pub fn scale(&self, s: Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| *c * s).collect())
    }
}

pub(crate) fn ratio_to_f64(r: Rat) -> f64 {
    // i128 -> f64 is exact for the coefficient sizes that occur here;
    // dividing afterwards keeps one rounding step.
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

impl Add for &NuPolynomial {
    type Output = NuPolynomial;
    fn add(self, rhs: &NuPolynomial) -> NuPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        NuPolynomial::new(coeffs)
    }
}

impl Sub for &NuPolynomial {
    type Output = NuPolynomial;
    fn sub(self, rhs: &NuPolynomial) -> NuPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        NuPolynomial::new(coeffs)
    }
}

impl Mul for &NuPolynomial {
    type Output = NuPolynomial;
    fn mul(self, rhs: &NuPolynomial) -> NuPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return NuPolynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + *a * *b;
            }
        }
        NuPolynomial::new(coeffs)
    }
}

impl Neg for &NuPolynomial {
    type Output = NuPolynomial;
    fn neg(self) -> NuPolynomial {
        NuPolynomial::new(self.coeffs.iter().map(|c| -*c).collect())
    }
}

impl fmt::Display for NuPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*nu")?,
                _ => write!(f, "{a}*nu^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}
