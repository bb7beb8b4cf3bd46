//! Acceptance suite: one test per criterion, one printed line per clause.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! clause-by-clause report. Criteria 3 and 6 each contain one clause that
//! is expected to fail on a correct build; the verification module's
//! documentation and the printed details explain why those reference
//! values are unattainable.

use advect_spectra::verification as v;

fn report(criterion: &v::CriterionResult) {
    for clause in &criterion.clauses {
        println!(
            "criterion {}: {} — {} [{}]",
            criterion.id,
            if clause.passed { "PASS" } else { "FAIL" },
            clause.name,
            clause.detail
        );
    }
}

fn assert_criterion(criterion: v::CriterionResult) {
    report(&criterion);
    let failing: Vec<&str> = criterion
        .clauses
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    assert!(
        criterion.passed,
        "criterion {} ({}) failing clauses: {:?}",
        criterion.id, criterion.name, failing
    );
}

#[test]
fn criterion_1_cfl_limits() {
    assert_criterion(v::criterion_cfl_limits(&advect_spectra::build_rule));
}

#[test]
fn criterion_2_closed_form_eigenvalues() {
    assert_criterion(v::criterion_closed_form_eigenvalues(
        &advect_spectra::build_rule,
    ));
}

#[test]
fn criterion_3_modified_equation() {
    assert_criterion(v::criterion_modified_equation(&advect_spectra::build_rule));
}

#[test]
fn criterion_4_structural_identities() {
    assert_criterion(v::criterion_structural_identities(
        &advect_spectra::build_rule,
    ));
}

#[test]
fn criterion_5_rk2_bound_cubic() {
    assert_criterion(v::criterion_rk2_bound_cubic());
}

#[test]
fn criterion_6_error_ladder() {
    assert_criterion(v::criterion_error_ladder());
}

#[test]
fn criterion_7_convergence_orders() {
    assert_criterion(v::criterion_convergence_orders());
}

#[test]
fn criterion_8_property_suite() {
    assert_criterion(v::criterion_property_suite(&advect_spectra::build_rule));
}

#[test]
fn seeded_coefficient_bug_is_caught() {
    use advect_spectra::nu_poly::{rat, NuPolynomial};
    use advect_spectra::{build_rule, SchemeId, TwoMomentRule};

    // fixture: perturb one one-stage coefficient by 1e-3 nu
    let broken = |id: SchemeId| -> advect_spectra::error::Result<TwoMomentRule> {
        let rule = build_rule(id)?;
        if id != SchemeId::CGKS_S1O2 {
            return Ok(rule);
        }
        let mut a = rule.a().clone();
        let bumped = &a[&0] + &NuPolynomial::monomial(rat(1, 1000), 1);
        a.insert(0, bumped);
        Ok(TwoMomentRule::new(
            id,
            a,
            rule.b().clone(),
            rule.c().clone(),
            rule.d().clone(),
        ))
    };
    let result = v::criterion_cfl_limits(&broken);
    assert!(
        !result.passed,
        "the seeded bug must fail the CFL criterion"
    );
    let failing = result.clauses.iter().find(|c| !c.passed).unwrap();
    assert!(failing.name.contains("cgks-s1o2"), "{}", failing.name);
}
