//! Acceptance criteria, one pass/fail line each.

use atlas_cli::recipes::Recipe;
use atlas_cli::scenarios::{run_scenario, Context, ScenarioReport};
use atlas_core::factory::{cm_filtration, extract_type};
use atlas_core::invariants::{analyze, is_cdl};
use atlas_core::{PrimeField, QPType};
use proptest::prelude::*;

fn report(n: u32, what: &str, failures: Vec<String>) -> bool {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {n} {what} (tolerance: exact)");
    for f in &failures {
        println!("    {f}");
    }
    failures.is_empty()
}

fn failures(reports: &[ScenarioReport]) -> Vec<String> {
    let mut out = Vec::new();
    for r in reports {
        if r.checks.is_empty() {
            out.push(format!("{}: no checks ran", r.name));
        }
        out.extend(
            r.failures()
                .map(|c| format!("{}: {}: expected {}, got {}", r.name, c.label, c.expected, c.actual)),
        );
    }
    out
}

fn scenarios(n: u32, what: &str, names: &[&str]) -> bool {
    let ctx = Context::default();
    let reports: Vec<ScenarioReport> = names
        .iter()
        .map(|s| run_scenario(s, &ctx).expect("registered scenario"))
        .collect();
    report(n, what, failures(&reports))
}

fn criterion_1_formula_anchors() -> bool {
    scenarios(1, "formula anchors", &["formula-anchors"])
}

fn criterion_2_triple_lines() -> bool {
    scenarios(2, "triple-line classification", &["thm-main1-d3"])
}

fn criterion_3_quadruple_lines() -> bool {
    scenarios(3, "quadruple-line classification", &["thm-main1-d4"])
}

fn criterion_4_beta_matrix() -> bool {
    scenarios(4, "beta-matrix facts", &["beta-matrix"])
}

fn criterion_5_splitting_anchors() -> bool {
    scenarios(5, "splitting anchors", &["splitting-anchors"])
}

fn criterion_6_maximum_genus_members() -> bool {
    scenarios(
        6,
        "maximum-genus family members",
        &["thm-main2-d4-members", "thm-main2-d5-members"],
    )
}

fn random_member(recipe: &str, seed: u64) -> Result<(), String> {
    let k = PrimeField::default();
    let r: Recipe = recipe.parse().map_err(|e| format!("{e}"))?;
    let c = r.build(k, seed).map_err(|e| format!("{recipe}: {e:#}"))?;
    let rep = analyze(&c, &[0, 1, 2, 3], seed).map_err(|e| format!("{recipe}: {e}"))?;
    if rep.genus_from_splitting != Some(rep.genus) {
        return Err(format!("{recipe} seed {seed}: genus routes {:?} vs {}", rep.genus_from_splitting, rep.genus));
    }
    for l in 0..4 {
        is_cdl(&c, rep.degree as u32, l, seed).map_err(|e| format!("{recipe} seed {seed}: {e}"))?;
    }
    let t: Option<QPType> = cm_filtration(&c, seed)
        .and_then(|f| extract_type(&f, c.window))
        .ok();
    if t != c.qp_type {
        return Err(format!("{recipe} seed {seed}: type {t:?} vs {:?}", c.qp_type));
    }
    Ok(())
}

fn criterion_7_oracle_equivalence() -> bool {
    let ctx = Context::default();
    let mut fails = failures(&[run_scenario("regression-corpus", &ctx).unwrap()]);
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(12)
    });
    let strategy = (0u32..3, 1u32..4, 0u32..2, any::<u64>());
    let result = runner.run(&strategy, |(a, b, qa, seed)| {
        random_member(&format!("random-triple:{a},{b}"), seed).map_err(TestCaseError::fail)?;
        random_member(&format!("random-quadruple:{qa},2"), seed).map_err(TestCaseError::fail)?;
        Ok(())
    });
    if let Err(e) = result {
        fails.push(format!("random members: {e}"));
    }
    report(7, "oracle equivalence on the regression corpus and random members", fails)
}

fn criterion_8_numerology() -> bool {
    scenarios(8, "admissible-type numerology", &["numerology"])
}

fn main() -> std::process::ExitCode {
    let criteria: [fn() -> bool; 8] = [
        criterion_1_formula_anchors,
        criterion_2_triple_lines,
        criterion_3_quadruple_lines,
        criterion_4_beta_matrix,
        criterion_5_splitting_anchors,
        criterion_6_maximum_genus_members,
        criterion_7_oracle_equivalence,
        criterion_8_numerology,
    ];
    let passed = criteria.iter().filter(|c| c()).count();
    println!("{passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
