//! Fully discrete two-moment schemes as offset-indexed coefficient tables.

use crate::error::{CoreError, Result};
use crate::field::TwoMomentField;
use crate::nu_poly::{rat, NuPolynomial, Rat};
use crate::schemes::SchemeId;
use num_traits::Zero;
use std::collections::BTreeMap;

/// One fully discrete scheme:
///
/// ```text
/// ubar'_j = sum_m a_m(nu) ubar_{j+m} + sum_m b_m(nu) v_{j+m}
/// v'_j    = sum_m c_m(nu) ubar_{j+m} + sum_m d_m(nu) v_{j+m}
/// ```
///
/// All four tables share the same offset set; absent entries are the zero
/// polynomial. Coefficients are exact rationals in `nu` of degree <= 4.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoMomentRule {
    scheme: SchemeId,
    offsets: Vec<i32>,
    a: BTreeMap<i32, NuPolynomial>,
    b: BTreeMap<i32, NuPolynomial>,
    c: BTreeMap<i32, NuPolynomial>,
    d: BTreeMap<i32, NuPolynomial>,
}

type Table = BTreeMap<i32, NuPolynomial>;

impl TwoMomentRule {
    pub fn new(scheme: SchemeId, a: Table, b: Table, c: Table, d: Table) -> Self {
        let mut offsets: Vec<i32> = a
            .keys()
            .chain(b.keys())
            .chain(c.keys())
            .chain(d.keys())
            .copied()
            .collect();
        offsets.sort_unstable();
        offsets.dedup();
        let strip = |t: Table| -> Table { t.into_iter().filter(|(_, p)| !p.is_zero()).collect() };
        Self {
            scheme,
            offsets,
            a: strip(a),
            b: strip(b),
            c: strip(c),
            d: strip(d),
        }
    }

    pub fn scheme(&self) -> SchemeId {
        self.scheme
    }

    pub fn offsets(&self) -> &[i32] {
        &self.offsets
    }

    pub fn a(&self) -> &Table {
        &self.a
    }
    pub fn b(&self) -> &Table {
        &self.b
    }
    pub fn c(&self) -> &Table {
        &self.c
    }
    pub fn d(&self) -> &Table {
        &self.d
    }

    /// Largest `nu` power across all tables.
    pub fn max_degree(&self) -> usize {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .flat_map(|t| t.values())
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }

    /// Numeric stencil weights at a fixed `nu`, one `(offset, a, b, c, d)`
    /// row per offset.
    pub fn weights_at(&self, nu: f64) -> Vec<(i32, f64, f64, f64, f64)> {
        let get = |t: &Table, m: i32| t.get(&m).map_or(0.0, |p| p.eval(nu));
        self.offsets
            .iter()
            .map(|&m| {
                (
                    m,
                    get(&self.a, m),
                    get(&self.b, m),
                    get(&self.c, m),
                    get(&self.d, m),
                )
            })
            .collect()
    }

    /// One periodic update step. The input field is unchanged.
    pub fn apply(&self, field: &TwoMomentField, nu: f64) -> Result<TwoMomentField> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(CoreError::Domain(format!("nu = {nu}")));
        }
        for (j, x) in field.ubar.iter().chain(field.v.iter()).enumerate() {
            if !x.is_finite() {
                return Err(CoreError::NonFinite(j % field.n_cells()));
            }
        }
        let n = field.n_cells();
        let weights = self.weights_at(nu);
        let mut out = field.clone();
        for j in 0..n {
            let (mut nu_bar, mut nv) = (0.0, 0.0);
            for &(m, wa, wb, wc, wd) in &weights {
                let ub = field.ubar_at(j, m);
                let vv = field.v_at(j, m);
                nu_bar += wa * ub + wb * vv;
                nv += wc * ub + wd * vv;
            }
            out.ubar[j] = nu_bar;
            out.v[j] = nv;
        }
        Ok(out)
    }

    /// Symbolic invariant check on the rational tables. Failures are
    /// reported, not thrown.
    pub fn consistency_check(&self) -> ConsistencyReport {
        let sum = |t: &Table| {
            t.values()
                .fold(NuPolynomial::zero(), |acc, p| &acc + p)
        };
        let mut checks = Vec::new();

        let sa = sum(&self.a);
        checks.push(Check {
            name: "sum a_m = 1".into(),
            passed: sa == NuPolynomial::one(),
            detail: format!("sum a_m = {sa}"),
        });

        let sc = sum(&self.c);
        checks.push(Check {
            name: "sum c_m = 0".into(),
            passed: sc.is_zero(),
            detail: format!("sum c_m = {sc}"),
        });

        // identity at nu = 0: a_m = d_m = delta_{m0}, b_m = c_m = 0
        let at0 = |t: &Table, m: i32| t.get(&m).map_or(Rat::zero(), |p| p.coeff(0));
        let identity = self.offsets.iter().all(|&m| {
            let delta = if m == 0 { rat(1, 1) } else { Rat::zero() };
            at0(&self.a, m) == delta
                && at0(&self.d, m) == delta
                && at0(&self.b, m).is_zero()
                && at0(&self.c, m).is_zero()
        });
        checks.push(Check {
            name: "identity at nu = 0".into(),
            passed: identity,
            detail: if identity {
                "rule reduces to the identity map".into()
            } else {
                "nu = 0 action is not the identity (derivative row re-projects)".into()
            },
        });

        checks.push(Check {
            name: "degree <= 4".into(),
            passed: self.max_degree() <= 4,
            detail: format!("max degree {}", self.max_degree()),
        });

        ConsistencyReport {
            scheme: self.scheme,
            checks,
        }
    }

    /// JSON document `{scheme_id, offsets, a, b, c, d}`; polynomials are
    /// arrays of `[numerator, denominator]` pairs. Round-trips exactly.
    pub fn to_json(&self) -> serde_json::Value {
        let table = |t: &Table| {
            let mut map = serde_json::Map::new();
            for (m, p) in t {
                let pairs: Vec<[i64; 2]> = p
                    .coeffs()
                    .iter()
                    .map(|r| [*r.numer() as i64, *r.denom() as i64])
                    .collect();
                map.insert(m.to_string(), serde_json::json!(pairs));
            }
            serde_json::Value::Object(map)
        };
        serde_json::json!({
            "scheme_id": self.scheme.to_string(),
            "offsets": self.offsets,
            "a": table(&self.a),
            "b": table(&self.b),
            "c": table(&self.c),
            "d": table(&self.d),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| CoreError::Serde("rule document must be an object".into()))?;
        let scheme: SchemeId = obj
            .get("scheme_id")
            .and_then(|v| v.as_str())
            .ok_or_else(|| CoreError::Serde("missing scheme_id".into()))?
            .parse()?;
        let table = |key: &str| -> Result<Table> {
            let mut t = Table::new();
            let map = obj
                .get(key)
                .and_then(|v| v.as_object())
                .ok_or_else(|| CoreError::Serde(format!("missing table {key}")))?;
            for (k, v) in map {
                let m: i32 = k
                    .parse()
                    .map_err(|_| CoreError::Serde(format!("bad offset {k}")))?;
                let pairs = v
                    .as_array()
                    .ok_or_else(|| CoreError::Serde("polynomial must be an array".into()))?;
                let mut coeffs = Vec::with_capacity(pairs.len());
                for p in pairs {
                    let pair = p
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| CoreError::Serde("coefficient must be [num, den]".into()))?;
                    let num = pair[0]
                        .as_i64()
                        .ok_or_else(|| CoreError::Serde("numerator must be integer".into()))?;
                    let den = pair[1]
                        .as_i64()
                        .filter(|d| *d != 0)
                        .ok_or_else(|| CoreError::Serde("denominator must be nonzero".into()))?;
                    coeffs.push(rat(num as i128, den as i128));
                }
                t.insert(m, NuPolynomial::new(coeffs));
            }
            Ok(t)
        };
        Ok(Self::new(
            scheme,
            table("a")?,
            table("b")?,
            table("c")?,
            table("d")?,
        ))
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Result of [`TwoMomentRule::consistency_check`].
#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub scheme: SchemeId,
    pub checks: Vec<Check>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// First failing identity, if any.
    pub fn violation(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}
