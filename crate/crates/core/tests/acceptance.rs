//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Every threshold is exact; the only tolerance anywhere is the wall-clock
//! bound in criterion 1.

use orbicoh::suites::*;

fn report(criterion: &str, r: &SuiteResult) {
    println!(
        "criterion {criterion}: {} — {} ({})",
        if r.pass { "PASS" } else { "FAIL" },
        r.name,
        r.details
    );
    assert!(
        r.pass,
        "criterion {criterion} failed: {} — {}",
        r.name, r.details
    );
}

#[test]
fn criterion_1_klein_four_headline() {
    // dims (1, 0, 1, 3, 5, 7, 9, 11, 13) in degrees 0..8, under 60 s
    report("1", &paper_klein4_headline());
}

#[test]
fn criterion_2_rg_side_equals_orbit_side() {
    // exact equality of both pipelines on all three frozen inputs
    report("2", &paper_theorem_1_1());
}

#[test]
fn criterion_3_interval_ext_and_gamma() {
    // Ext(bottom) = 1..9, Ext(lines) all ones, gamma* rank 3 in 1..6
    report("3", &paper_section4_lemmas());
}

#[test]
fn criterion_4_no_periodicity() {
    // window 8, offset 2, strictly increasing tail certificate
    report("4", &paper_theorem_1_2());
}

#[test]
fn criterion_5_e2_grid_and_edges() {
    // grid of threes for q >= 1, p+q <= 6; horizontal edge rank 1,0,...;
    // relative essential zero 0..6; essential kernels (0,0,0,1) in 0..3
    report("5", &paper_e2_example());
}

#[test]
fn criterion_6_structural_suites() {
    let results = run_invariant_suites(DEFAULT_SEED);
    let mut all = true;
    for r in &results {
        println!(
            "criterion 6[{}]: {} — {}",
            r.name,
            if r.pass { "PASS" } else { "FAIL" },
            r.details
        );
        all &= r.pass;
    }
    assert!(all, "a structural suite failed");
}

#[test]
fn criterion_7_degenerate_family() {
    report("7", &degenerate_family_suite());
}

#[test]
fn criterion_8_convergence_excluded_by_design() {
    // full E-infinity reconstruction is out of scope; the subquotient
    // inequality (criterion 6) is the substituted property check, and the
    // limitation is printed with every page
    assert!(orbicoh::spectral::E2_BANNER.contains("differentials not computed"));
    let sub = subquotient_suite();
    println!(
        "criterion 8: {} — E-infinity excluded by design; banner present; {}",
        if sub.pass { "PASS" } else { "FAIL" },
        sub.details
    );
    assert!(sub.pass);
}

#[test]
fn auxiliary_paper_values() {
    // extra frozen values beyond the numbered criteria
    for r in [paper_fsplit_golden(), paper_inflation_consistency()] {
        println!(
            "auxiliary: {} — {} ({})",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.details
        );
        assert!(r.pass);
    }
}
