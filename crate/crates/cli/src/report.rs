//! Text rendering of reports.

use std::fmt::Write;

use atlas_core::invariants::CurveReport;

use crate::experiments::ExperimentReport;
use crate::scenarios::ScenarioReport;

pub fn curve_text(r: &CurveReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "recipe:  {}", r.recipe);
    let _ = writeln!(s, "degree:  {}", r.degree);
    let _ = writeln!(s, "genus:   {}", r.genus);
    let _ = writeln!(s, "s(C):    {}", r.s_value);
    let _ = writeln!(s, "support: {:?}", r.support);
    if let Some(t) = &r.qp_type {
        let _ = writeln!(s, "type:    {t}");
    }
    if let Some(sp) = &r.splitting {
        let _ = writeln!(s, "I_C/I_L^d splitting: {sp}");
    }
    if let Some(g) = r.genus_from_splitting {
        let _ = writeln!(s, "genus from splitting: {g}");
    }
    for f in &r.condition_flags {
        let _ = writeln!(s, "condition C_{{{},{}}}: {}", f.d, f.l, f.holds);
    }
    for c in &r.cdl_flags {
        let _ = writeln!(
            s,
            "C_{{{},{}}}: {} (h0 {}, h1 {}, splitting {})",
            c.d,
            c.l,
            c.holds(),
            c.h0_agreement,
            c.h1_vanishing,
            c.splitting
        );
    }
    let c = &r.certification;
    let _ = writeln!(s, "certified over F_{} in degrees <= {}, seed {}", c.field_char, c.window, c.seed);
    s
}

pub fn scenario_text(r: &ScenarioReport, verbose: bool) -> String {
    let mut s = String::new();
    let failed = r.failures().count();
    let _ = writeln!(
        s,
        "[{}] {} ({} checks, {} failed)",
        if r.passed() { "PASS" } else { "FAIL" },
        r.name,
        r.checks.len(),
        failed
    );
    for c in &r.checks {
        if verbose || !c.pass {
            let _ = writeln!(
                s,
                "  {} {}: expected {}, got {}",
                if c.pass { "ok  " } else { "FAIL" },
                c.label,
                c.expected,
                c.actual
            );
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

pub fn experiment_text(r: &ExperimentReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family {} at level {}, seed {}", r.family, r.level, r.seed);
    let _ = writeln!(
        s,
        "{}/{} constructed, {}/{} {}",
        r.constructed, r.trials, r.successes, r.constructed, r.property
    );
    for f in &r.failures {
        let _ = writeln!(s, "  construction failure: {f}");
    }
    s
}
