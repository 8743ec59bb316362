//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the numbers behind the verdict (run with `--nocapture` to see them).

use carleson::suites;

fn verdict(name: &str, pass: bool, detail: &str) {
    println!("acceptance {name}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name}: {detail}");
}

#[test]
fn c01_roberts_conservation_and_bounds() {
    let s = suites::roberts_conservation_suite().expect("suite runs");
    let bad: Vec<&str> = s
        .rows
        .iter()
        .filter(|r| !r.ok)
        .map(|r| r.measure.as_str())
        .take(5)
        .collect();
    verdict(
        "1 roberts-conservation",
        s.pass,
        &format!(
            "{} measures x 2 gauges, exhaustive caps and 1e-12 atomwise conservation; offenders: {:?}",
            s.measures, bad
        ),
    );
}

#[test]
fn c02_lemma31_comparability() {
    let s = suites::lemma31_ratio_suite().expect("suite runs");
    let detail = s
        .families
        .iter()
        .map(|f| format!("A={} {} spread {:.1}%", f.ratio_a, f.gauge, 100.0 * f.spread))
        .collect::<Vec<_>>()
        .join("; ");
    verdict("2 lemma31-comparability", s.pass, &detail);
}

#[test]
fn c03_hp_growth_slopes() {
    let s = suites::hp_growth_suite().expect("suite runs");
    verdict(
        "3 hp-growth",
        s.pass,
        &format!(
            "hp slope {:.3} vs {:.3} +/- {:.2}; area slope {:.3} vs {:.3} +/- {:.2}",
            s.hp_slope,
            s.hp_slope_expected,
            suites::SLOPE_TOLERANCE,
            s.area_slope,
            s.area_slope_expected,
            suites::SLOPE_TOLERANCE
        ),
    );
}

#[test]
fn c04_pruned_cantor_sharpness() {
    let s = suites::pruned_sharpness_suite().expect("suite runs");
    verdict(
        "4 sharpness-pruned",
        s.pass,
        &format!(
            "convergent side mean last-3 increment {:.3}% (< 1%), divergent side {:.3}% with growth factor {:.3}",
            100.0 * s.convergent_last3_increment,
            100.0 * s.divergent_last3_increment,
            s.divergent_growth
        ),
    );
}

#[test]
fn c05_cantor_invisibility_ratio() {
    let s = suites::cantor_invisibility_suite().expect("suite runs");
    verdict(
        "5 sharpness-cantor",
        s.pass,
        &format!(
            "per-generation growth ratio {:.4} vs 2^(1-p)/A^(1-2p) = {:.4} (10% band)",
            s.fitted_ratio, s.expected_ratio
        ),
    );
}

#[test]
fn c06_pipeline_consistency() {
    let s = suites::pipeline_consistency_suite().expect("suite runs");
    let bad: Vec<&str> = s
        .rows
        .iter()
        .filter(|r| !(r.nevanlinna_consistent && r.hardy_consistent))
        .map(|r| r.measure.as_str())
        .collect();
    verdict(
        "6 pipeline-consistency",
        s.pass,
        &format!("{} battery measures, inconsistent: {:?}", s.rows.len(), bad),
    );
}

#[test]
fn c07_restoring_map() {
    let s = suites::restoring_suite().expect("suite runs");
    verdict(
        "7 restoring-map",
        s.pass,
        &format!(
            "b(a) > a on 99 x {} grid, b(1) = 1 exact: {}, max iterations to 1-1e-6: {}",
            s.alphas.len(),
            s.fixed_point_exact,
            s.max_iterations
        ),
    );
}

#[test]
fn c08_maximal_solution_asymptotics() {
    let s = suites::maximal_asymptotics_suite().expect("suite runs");
    verdict(
        "8 maximal-asymptotics",
        s.pass,
        &format!(
            "u(r)(1-r)^(1/2) = {:.6} vs C_alpha = {:.6} at 1-r = 1e-5 (rel err {:.4} < {})",
            s.normalized_at_1e5,
            s.c_alpha,
            s.relative_error,
            suites::MAXIMAL_ASYMPTOTIC_TOLERANCE
        ),
    );
}

#[test]
fn c09_inner_function_identities() {
    let s = suites::identity_suite().expect("suite runs");
    verdict(
        "9 inner-identities",
        s.pass,
        &format!(
            "|S_mu| = exp(-P_mu) on {} random pairs, max log-domain error {:.3e} (<= 1e-12); Ahern-Clark on {} points: {}",
            s.pairs, s.max_identity_error, s.ahern_clark_checked, s.ahern_clark_ok
        ),
    );
}

#[test]
fn c10_besov_area_coherence() {
    let s = suites::besov_coherence_suite().expect("suite runs");
    let bad: Vec<&str> = s
        .rows
        .iter()
        .filter(|r| {
            !(r.besov_q1_diverging == r.besov_q2_diverging
                && r.besov_q1_diverging == r.area_diverging)
        })
        .map(|r| r.measure.as_str())
        .collect();
    verdict(
        "10 besov-area-coherence",
        s.pass,
        &format!("{} battery measures, mismatches: {:?}", s.rows.len(), bad),
    );
}
