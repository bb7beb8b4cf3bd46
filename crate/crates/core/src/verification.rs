//! The acceptance-criteria runner shared by the `acceptance` test target
//! and the CLI `verify` subcommand.
//!
//! Every criterion is evaluated at its pinned tolerance and reported
//! clause by clause. Two clauses are expected to fail on a correct build;
//! both trace back to reference values that are mutually inconsistent with
//! the schemes' own construction (see the notes the report carries):
//!
//! * criterion 3, `fr-rk2-g2` dissipation: the recorded quartic reference
//!   polynomial `(nu^4 + nu^2 + nu)/24` belongs to an average row whose
//!   zero-slope sawtooth amplification `1 - 2 nu + 6 nu^2` exceeds 1 beyond
//!   `nu = 1/3`, so no scheme can both match it and stay stable to CFL 1.0;
//!   the shipped Lobatto-collocation rule keeps CFL 1.0 and differs in that
//!   coefficient by `nu^2 / 8`.
//! * criterion 6, the dg-rk2 near-critical rung: with exact-moment sine
//!   initialization the spurious branch is seeded below 1e-7, so its
//!   ~2100x growth over one period at CFL 0.334 stays invisible in the L1
//!   of the averages.

use crate::advection::{march, RunConfig};
use crate::error::Result;
use crate::fourier::{
    assemble_g, cfl_limit, eigen2x2, rk2_closed_form, rk2_stability_bound,
    s1o2_closed_form, spectral_radius, DEFAULT_EPSILON,
};
use crate::modified_equation::{compare_truncation, nu_grid_capped};
use crate::rule::TwoMomentRule;
use crate::schemes::{build_rule, correction_function, grp_step, CorrectionKind, SchemeId};
use crate::TwoMomentField;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub clauses: Vec<Clause>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub library_version: String,
    pub all_passed: bool,
    pub criteria: Vec<CriterionResult>,
    pub notes: Vec<String>,
}

/// Source of rules, injectable so that tests can seed a broken coefficient
/// and watch the suite catch it.
pub type RuleProvider<'a> = &'a dyn Fn(SchemeId) -> Result<TwoMomentRule>;

fn clause(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Clause {
    Clause {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn finish(id: u8, name: &str, clauses: Vec<Clause>) -> CriterionResult {
    CriterionResult {
        id,
        name: name.into(),
        passed: clauses.iter().all(|c| c.passed),
        clauses,
    }
}

fn err_clause(name: &str, e: impl std::fmt::Display) -> Clause {
    clause(name, false, format!("error: {e}"))
}

// --- criterion 1 -----------------------------------------------------------

pub fn criterion_cfl_limits(rules: RuleProvider) -> CriterionResult {
    // (scheme, target, tolerance, one-sided)
    let targets: [(SchemeId, f64, f64, bool); 7] = [
        (SchemeId::CGKS_S1O2, 1.0, 1e-3, false),
        (SchemeId::CGKS_RK2, 1.0, 1e-3, true),
        (SchemeId::DG_RK2, 1.0 / 3.0, 5e-3, false),
        (SchemeId::DG_S1O2, 1.0 / 3.0, 5e-3, false),
        (SchemeId::FR_RK2_RADAU, 1.0 / 3.0, 5e-3, false),
        (SchemeId::FR_RK2_G2, 1.0, 5e-3, false),
        (SchemeId::CGKS_S2O4, 0.56, 0.01, false),
    ];
    let mut clauses = Vec::new();
    for (id, target, tol, one_sided) in targets {
        let name = format!("cfl_limit({id}) = {target:.3} +- {tol}");
        match rules(id).and_then(|r| cfl_limit(&r, 1e-4, DEFAULT_EPSILON, 2048)) {
            Ok(res) => {
                let ok = if one_sided {
                    res.nu_star >= target - tol
                } else {
                    (res.nu_star - target).abs() <= tol
                };
                clauses.push(clause(name, ok, format!("nu* = {:.5}", res.nu_star)));
            }
            Err(e) => clauses.push(err_clause(&name, e)),
        }
    }
    finish(1, "CFL limits", clauses)
}

// --- criterion 2 -----------------------------------------------------------

pub fn criterion_closed_form_eigenvalues(rules: RuleProvider) -> CriterionResult {
    let tol = 1e-12;
    let mut clauses = Vec::new();
    for (id, forms) in [
        (
            SchemeId::CGKS_S1O2,
            [s1o2_closed_form as fn(f64, f64) -> _; 2],
        ),
        (SchemeId::CGKS_RK2, [rk2_closed_form, s1o2_closed_form]),
    ] {
        let name = format!("eigenvalues of G({id}) match the closed forms");
        let rule = match rules(id) {
            Ok(r) => r,
            Err(e) => {
                clauses.push(err_clause(&name, e));
                continue;
            }
        };
        let mut worst = 0.0f64;
        for i in 0..64 {
            let theta = 2.0 * PI * i as f64 / 63.0;
            for k in 1..=64 {
                let nu = k as f64 / 64.0;
                let (e1, e2) = eigen2x2(&assemble_g(&rule, theta, nu));
                let (f1, f2) = (forms[0](theta, nu), forms[1](theta, nu));
                // set-match the computed pair against the closed forms
                let d = ((e1 - f1).norm().max((e2 - f2).norm()))
                    .min((e1 - f2).norm().max((e2 - f1).norm()));
                worst = worst.max(d);
            }
        }
        clauses.push(clause(
            name,
            worst <= tol,
            format!("max deviation {worst:.3e} on the 64x64 grid"),
        ));
    }
    finish(2, "closed-form eigenvalue oracles", clauses)
}

// --- criterion 3 -----------------------------------------------------------

pub fn criterion_modified_equation(rules: RuleProvider) -> CriterionResult {
    let mut clauses = Vec::new();
    for id in SchemeId::second_order() {
        let name = format!("expand_symbol({id}) matches the reference polynomials");
        let result = rules(id).and_then(|rule| {
            let limit = cfl_limit(&rule, 1e-4, DEFAULT_EPSILON, 1024)?.nu_star;
            compare_truncation(&rule, id, &nu_grid_capped(limit))
        });
        match result {
            Ok(report) => {
                let failing: Vec<String> = report
                    .rows
                    .iter()
                    .filter(|r| !r.pass)
                    .map(|r| {
                        format!(
                            "nu={:.1}: c3={:+.6e} p3={:+.6e} c4={:+.6e} p4={:+.6e}",
                            r.nu, r.c3, r.p3, r.c4, r.p4
                        )
                    })
                    .collect();
                let detail = if failing.is_empty() {
                    format!(
                        "{} nu samples, sign delta {:+}",
                        report.rows.len(),
                        report.sign_delta
                    )
                } else {
                    failing.join("; ")
                };
                clauses.push(clause(name, report.all_pass, detail));
            }
            Err(e) => clauses.push(err_clause(&name, e)),
        }
    }
    finish(3, "modified-equation cross-validation", clauses)
}

// --- criterion 4 -----------------------------------------------------------

pub fn criterion_structural_identities(rules: RuleProvider) -> CriterionResult {
    let mut clauses = Vec::new();

    let name = "fr-rk2-radau rule == dg-rk2 rule (exact rational equality)";
    match (rules(SchemeId::FR_RK2_RADAU), rules(SchemeId::DG_RK2)) {
        (Ok(fr), Ok(dg)) => {
            let equal =
                fr.a() == dg.a() && fr.b() == dg.b() && fr.c() == dg.c() && fr.d() == dg.d();
            clauses.push(clause(name, equal, "coefficient-for-coefficient"));
        }
        (Err(e), _) | (_, Err(e)) => clauses.push(err_clause(name, e)),
    }

    let name = "grp_step == apply(cgks-s1o2) on 100 random fields";
    match rules(SchemeId::CGKS_S1O2) {
        Ok(rule) => {
            // deterministic linear-congruential fields; values in [-1, 1)
            let mut state = 0x243F_6A88_85A3_08D3u64;
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
            };
            let mut worst = 0.0f64;
            'outer: for _ in 0..100 {
                let n = 16;
                let ubar: Vec<f64> = (0..n).map(|_| next()).collect();
                let v: Vec<f64> = (0..n).map(|_| next()).collect();
                let field = match TwoMomentField::new(ubar, v, 1.0 / n as f64) {
                    Ok(f) => f,
                    Err(e) => {
                        clauses.push(err_clause(name, e));
                        break 'outer;
                    }
                };
                for nu in [0.1, 0.5, 0.9] {
                    let (a, b) = match (grp_step(&field, nu), rule.apply(&field, nu)) {
                        (Ok(a), Ok(b)) => (a, b),
                        (Err(e), _) | (_, Err(e)) => {
                            clauses.push(err_clause(name, e));
                            break 'outer;
                        }
                    };
                    for j in 0..n {
                        worst = worst
                            .max((a.ubar[j] - b.ubar[j]).abs())
                            .max((a.v[j] - b.v[j]).abs());
                    }
                }
            }
            clauses.push(clause(
                name,
                worst <= 1e-14,
                format!("max deviation {worst:.3e}"),
            ));
        }
        Err(e) => clauses.push(err_clause(name, e)),
    }

    finish(4, "structural identities", clauses)
}

// --- criterion 5 -----------------------------------------------------------

pub fn criterion_rk2_bound_cubic() -> CriterionResult {
    let name = "inf over theta of rk2_stability_bound = 1.000 +- 1e-6";
    let mut inf = f64::INFINITY;
    for k in 1..8192 {
        let theta = 2.0 * PI * k as f64 / 8192.0;
        match rk2_stability_bound(theta) {
            Ok(b) => inf = inf.min(b),
            Err(e) => {
                return finish(5, "RK2 stability-bound cubic", vec![err_clause(name, e)]);
            }
        }
    }
    let clauses = vec![clause(
        name,
        (inf - 1.0).abs() <= 1e-6,
        format!("infimum {inf:.9}"),
    )];
    finish(5, "RK2 stability-bound cubic", clauses)
}

// --- criterion 6 -----------------------------------------------------------

pub fn criterion_error_ladder() -> CriterionResult {
    let mut clauses = Vec::new();
    let run = |scheme: SchemeId, cfl: f64| march(&RunConfig::new(scheme, 640, cfl, 1.0));

    match (
        run(SchemeId::CGKS_S1O2, 1.0),
        run(SchemeId::CGKS_S1O2, 1.01),
        run(SchemeId::CGKS_S1O2, 1.1),
    ) {
        (Ok(base), Ok(mid), Ok(top)) => {
            clauses.push(clause(
                "cgks @ cfl 1.0: L1 <= 1e-4, no blow-up",
                base.l1_error <= 1e-4 && !base.blew_up,
                format!("L1 = {:.3e}", base.l1_error),
            ));
            clauses.push(clause(
                "cgks @ cfl 1.01: L1 at least 10x larger",
                mid.l1_error >= 10.0 * base.l1_error && !mid.blew_up,
                format!("L1 = {:.3e} vs base {:.3e}", mid.l1_error, base.l1_error),
            ));
            clauses.push(clause(
                "cgks @ cfl 1.1: blow-up past 1e12",
                top.blew_up,
                format!("amplitude {:.3e} after {} steps", top.max_amplitude, top.steps_taken),
            ));
        }
        (a, b, c) => {
            for r in [a, b, c] {
                if let Err(e) = r {
                    clauses.push(err_clause("cgks ladder", e));
                }
            }
        }
    }

    match (
        run(SchemeId::DG_RK2, 0.3333),
        run(SchemeId::DG_RK2, 0.334),
        run(SchemeId::DG_RK2, 0.34),
    ) {
        (Ok(base), Ok(mid), Ok(top)) => {
            clauses.push(clause(
                "dg-rk2 @ cfl 0.3333: stable with L1 <= 1e-3",
                base.l1_error <= 1e-3 && !base.blew_up,
                format!("L1 = {:.3e}", base.l1_error),
            ));
            clauses.push(clause(
                "dg-rk2 @ cfl 0.334: L1 at least 10x larger",
                mid.l1_error >= 10.0 * base.l1_error,
                format!("L1 = {:.3e} vs base {:.3e}", mid.l1_error, base.l1_error),
            ));
            clauses.push(clause(
                "dg-rk2 @ cfl 0.34: blow-up past 1e12",
                top.blew_up,
                format!("amplitude {:.3e} after {} steps", top.max_amplitude, top.steps_taken),
            ));
        }
        (a, b, c) => {
            for r in [a, b, c] {
                if let Err(e) = r {
                    clauses.push(err_clause("dg ladder", e));
                }
            }
        }
    }

    finish(6, "error-table ladder (640 cells, sine, T = 1)", clauses)
}

// --- criterion 7 -----------------------------------------------------------

pub fn criterion_convergence_orders() -> CriterionResult {
    let mut clauses = Vec::new();
    let sizes = [40usize, 80, 160, 320];
    let safe_cfl = |id: SchemeId| match id {
        SchemeId::DG_RK2 | SchemeId::DG_S1O2 | SchemeId::FR_RK2_RADAU => 0.2,
        _ => 0.5,
    };
    for id in SchemeId::second_order() {
        let name = format!("{id} L1 orders in [1.8, 2.2]");
        match crate::advection::convergence_study(id, safe_cfl(id), &sizes) {
            Ok(rows) => {
                let orders: Vec<f64> = rows.iter().filter_map(|r| r.2).collect();
                let ok = orders.iter().all(|o| (1.8..=2.2).contains(o));
                clauses.push(clause(name, ok, format!("orders {orders:.3?}")));
            }
            Err(e) => clauses.push(err_clause(&name, e)),
        }
    }
    let name = "cgks-s2o4 observed order >= 3.5";
    match crate::advection::convergence_study(SchemeId::CGKS_S2O4, 0.4, &sizes) {
        Ok(rows) => {
            let orders: Vec<f64> = rows.iter().filter_map(|r| r.2).collect();
            let ok = orders.iter().all(|o| *o >= 3.5);
            clauses.push(clause(name, ok, format!("orders {orders:.3?}")));
        }
        Err(e) => clauses.push(err_clause(name, e)),
    }
    finish(7, "convergence orders", clauses)
}

// --- criterion 8 -----------------------------------------------------------

pub fn criterion_property_suite(rules: RuleProvider) -> CriterionResult {
    let mut clauses = Vec::new();

    // conservation of the average sum over 10 periods for every scheme
    let mut worst: Option<(SchemeId, f64)> = None;
    let mut failed = false;
    for id in SchemeId::all() {
        let cfl: f64 = match id {
            SchemeId::CGKS_S2O4 => 0.4,
            SchemeId::DG_RK2 | SchemeId::DG_S1O2 | SchemeId::FR_RK2_RADAU => 0.25,
            _ => 0.8,
        };
        let drift = (|| -> Result<f64> {
            let rule = rules(id)?;
            let mut f = crate::advection::init_field(crate::advection::InitialProfile::Sine, 64)?;
            let s0 = f.sum_ubar();
            let steps = (10.0 * 64.0 / cfl).round() as usize;
            for _ in 0..steps {
                f = if id == SchemeId::GRP {
                    grp_step(&f, cfl)?
                } else {
                    rule.apply(&f, cfl)?
                };
            }
            Ok((f.sum_ubar() - s0).abs() / (64.0 * f.max_abs_ubar().max(1.0)))
        })();
        match drift {
            Ok(d) => {
                if worst.is_none_or(|w| d > w.1) {
                    worst = Some((id, d));
                }
                failed |= d > 1e-12;
            }
            Err(e) => {
                clauses.push(err_clause("conservation over 10 periods", e));
                failed = true;
            }
        }
    }
    if let Some((id, d)) = worst {
        clauses.push(clause(
            "sum of averages conserved to 1e-12 over 10 periods, all schemes",
            !failed,
            format!("worst relative drift {d:.3e} ({id})"),
        ));
    }

    // exact one-cell shift at nu = 1 for the one-stage compact scheme
    let name = "cgks-s1o2 @ nu = 1 shifts both moments exactly (1e-13)";
    match rules(SchemeId::CGKS_S1O2) {
        Ok(rule) => match crate::advection::init_field(crate::advection::InitialProfile::Sine, 64)
        {
            Ok(f0) => match rule.apply(&f0, 1.0) {
                Ok(f1) => {
                    let shifted = f0.shifted(1);
                    let mut worst = 0.0f64;
                    for j in 0..64 {
                        worst = worst
                            .max((f1.ubar[j] - shifted.ubar[j]).abs())
                            .max((f1.v[j] - shifted.v[j]).abs());
                    }
                    clauses.push(clause(name, worst <= 1e-13, format!("max deviation {worst:.3e}")));
                }
                Err(e) => clauses.push(err_clause(name, e)),
            },
            Err(e) => clauses.push(err_clause(name, e)),
        },
        Err(e) => clauses.push(err_clause(name, e)),
    }

    // conjugate symmetry of the spectra under theta -> 2 pi - theta
    let name = "spectra symmetric under theta -> 2 pi - theta (1e-13)";
    let mut worst_sym = 0.0f64;
    let mut sym_err = None;
    for id in SchemeId::all() {
        match rules(id) {
            Ok(rule) => {
                for k in 1..64 {
                    let theta = PI * k as f64 / 64.0;
                    let (a1, a2) = eigen2x2(&assemble_g(&rule, theta, 0.3));
                    let (b1, b2) = eigen2x2(&assemble_g(&rule, 2.0 * PI - theta, 0.3));
                    let m_a = a1.norm().max(a2.norm());
                    let m_b = b1.norm().max(b2.norm());
                    worst_sym = worst_sym.max((m_a - m_b).abs());
                }
            }
            Err(e) => sym_err = Some(e),
        }
    }
    match sym_err {
        None => clauses.push(clause(
            name,
            worst_sym <= 1e-13,
            format!("max modulus asymmetry {worst_sym:.3e}"),
        )),
        Some(e) => clauses.push(err_clause(name, e)),
    }

    // correction-function endpoint conditions, exact rational checks
    let name = "correction-function endpoint conditions exact";
    let mut endpoint_ok = true;
    for kind in [CorrectionKind::Radau, CorrectionKind::G2] {
        let cf = correction_function(kind);
        let one = crate::nu_poly::rat(1, 1);
        let zero = crate::nu_poly::rat(0, 1);
        endpoint_ok &= cf.gl.eval_rat(zero) == one
            && cf.gl.eval_rat(one) == zero
            && cf.gr.eval_rat(zero) == zero
            && cf.gr.eval_rat(one) == one;
    }
    clauses.push(clause(name, endpoint_ok, "gL(0)=1, gL(1)=0, gR(0)=0, gR(1)=1"));

    finish(8, "property suite", clauses)
}

// ---------------------------------------------------------------------------

/// Run every criterion with an injectable rule source.
pub fn run_all_with(rules: RuleProvider) -> VerificationReport {
    let criteria = vec![
        criterion_cfl_limits(rules),
        criterion_closed_form_eigenvalues(rules),
        criterion_modified_equation(rules),
        criterion_structural_identities(rules),
        criterion_rk2_bound_cubic(),
        criterion_error_ladder(),
        criterion_convergence_orders(),
        criterion_property_suite(rules),
    ];
    let notes = vec![
        "cgks-rk2 amplification matrix is upper triangular with distinct diagonal \
         entries: one eigenvalue follows the two-stage closed form, the other the \
         one-stage closed form; the pair is matched as a set."
            .into(),
        "fr-rk2-g2 dissipation reference (nu^4 + nu^2 + nu)/24 is unattainable \
         together with its CFL-1.0 stability: the average row it implies amplifies \
         the zero-slope sawtooth by 1 - 2nu + 6nu^2 > 1 beyond nu = 1/3. The shipped \
         Lobatto-collocation rule keeps CFL 1.0 and measures (nu^4 - 2nu^2 + nu)/24."
            .into(),
        "dg-rk2 near-critical rung (cfl 0.334, T = 1): exact-moment sine \
         initialization seeds the unstable spurious branch below 1e-7, so the \
         expected 10x L1 growth is unobservable over one period."
            .into(),
    ];
    let all_passed = criteria.iter().all(|c| c.passed);
    VerificationReport {
        library_version: env!("CARGO_PKG_VERSION").into(),
        all_passed,
        criteria,
        notes,
    }
}

/// Run every criterion against the shipped rules.
pub fn run_all() -> VerificationReport {
    run_all_with(&build_rule)
}

/// Spectrum invariant used by the CLI: every plotted modulus stays within
/// the stability slack at the scheme's nominal CFL.
pub fn moduli_within_unit_circle(rule: &TwoMomentRule, nu: f64, n_theta: usize) -> Result<bool> {
    Ok(spectral_radius(rule, nu, n_theta.max(256))? <= 1.0 + DEFAULT_EPSILON)
}
