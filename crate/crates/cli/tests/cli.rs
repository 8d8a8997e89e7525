use std::process::Command;

use atlas_cli::io::{export_ideal, import_ideal, IdealFile};
use atlas_cli::recipes::Recipe;
use atlas_cli::scenarios::{corpus, Context, LEVELS};
use atlas_core::invariants::analyze;
use atlas_core::PrimeField;

fn atlas(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = Context::default();
    for e in corpus(&ctx).unwrap().iter().filter(|e| e.parts.is_empty()) {
        let c = &e.curve;
        let p1 = dir.path().join("a.json");
        let p2 = dir.path().join("b.json");
        export_ideal(c, &p1).unwrap();
        let imported = import_ideal(&IdealFile::read(&p1).unwrap(), None, 0).unwrap();
        assert!(imported.curve.ideal.same_as(&c.ideal, c.window), "{}", c.provenance.recipe);
        export_ideal(&imported.curve, &p1).unwrap();
        let again = import_ideal(&IdealFile::read(&p1).unwrap(), None, 0).unwrap();
        export_ideal(&again.curve, &p2).unwrap();
        assert_eq!(
            std::fs::read_to_string(&p1).unwrap(),
            std::fs::read_to_string(&p2).unwrap(),
            "{}",
            c.provenance.recipe
        );
        let mut r1 = analyze(c, &LEVELS, 0).unwrap();
        let r2 = analyze(&imported.curve, &LEVELS, 0).unwrap();
        r1.recipe = r2.recipe.clone();
        assert_eq!(r1, r2, "{}", c.provenance.recipe);
        assert_eq!(imported.curve.qp_type, e.declared.clone().or(imported.curve.qp_type.clone()));
    }
}

#[test]
fn skew_line_imports_are_moved_onto_the_line() {
    let k = PrimeField::default();
    let c = "triple:0,1".parse::<Recipe>().unwrap().build(k, 0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("skew.json");
    export_ideal(&c.swap_lines(), &p).unwrap();
    let imported = import_ideal(&IdealFile::read(&p).unwrap(), None, 0).unwrap();
    assert_eq!(imported.warnings.len(), 1);
    assert!(imported.curve.ideal.same_as(&c.ideal, c.window));
}

#[test]
fn json_output_is_deterministic() {
    let a = atlas(&["--json", "--seed", "7", "construct", "random-quadruple:0,2"]);
    let b = atlas(&["--json", "--seed", "7", "construct", "random-quadruple:0,2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = atlas(&["--json", "--trials", "5", "verify"]);
    let b = atlas(&["--json", "--trials", "5", "verify"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_status() {
    assert!(atlas(&["verify", "--only", "numerology"]).status.success());
    assert_eq!(atlas(&["verify", "--only", "nonsense"]).status.code(), Some(1));
    assert_eq!(atlas(&["construct", "triple:0"]).status.code(), Some(2));
    assert_eq!(atlas(&["experiment", "nonsense"]).status.code(), Some(2));
    assert!(atlas(&["--trials", "3", "experiment", "triple-l1"]).status.success());
}

const NEIGHBOURHOOD: &str = r#"{
  "field_char": 32003,
  "variables": ["x", "y", "z", "w"],
  "generators": [
    [[[3, 0, 0, 0], 1]],
    [[[2, 1, 0, 0], 1]],
    [[[1, 2, 0, 0], 1]],
    [[[0, 3, 0, 0], 1]]
  ]
}"#;

const DOUBLE: &str = r#"{
  "field_char": 32003,
  "variables": ["x", "y", "z", "w"],
  "generators": [
    [[[2, 0, 0, 0], 1]],
    [[[1, 1, 0, 0], 1]],
    [[[0, 2, 0, 0], 1]],
    [[[1, 0, 0, 1], 1], [[0, 1, 1, 0], -1]]
  ]
}"#;

#[test]
fn hand_written_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("l3.json");
    std::fs::write(&p, NEIGHBOURHOOD).unwrap();
    let out = atlas(&["--json", "invariants", p.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["degree"], 6);
    assert_eq!(v["report"]["genus"], 3);
    assert!(v["report"]["qp_type"].is_null());
    assert!(v["warnings"][0].as_str().unwrap().contains("quasiprimitive"));

    let p = dir.path().join("c20.json");
    std::fs::write(&p, DOUBLE).unwrap();
    let out = atlas(&["--json", "check", p.to_str().unwrap(), "--d", "2", "--l", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["is_cdl"], true);
    assert_eq!(v["genus_vs_bound"], "Equal");
    let out = atlas(&["--json", "invariants", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["genus"], -1);
    assert_eq!(v["report"]["s_value"], 2);
}

#[test]
fn recipe_grammar() {
    for s in ["line", "triple:0,1", "union:line+double:1", "union:(union:line+line)+line"] {
        let r: Recipe = s.parse().unwrap();
        assert_eq!(r.to_string(), s);
    }
    for s in ["", "triple:0", "union:line", "double:x", "primitive:5"] {
        assert!(s.parse::<Recipe>().is_err(), "{s}");
    }
}

#[test]
fn sample_points_on_the_torsion_support_are_skipped() {
    let k = PrimeField::default();
    for (recipe, seed) in [
        ("random-triple:0,3", 242678309088164554u64),
        ("random-quadruple:1,2", 670746349654981678),
    ] {
        let c = recipe.parse::<Recipe>().unwrap().build(k, seed).unwrap();
        let f = atlas_core::factory::cm_filtration(&c, seed).unwrap();
        let t = atlas_core::factory::extract_type(&f, c.window).unwrap();
        assert_eq!(Some(t), c.qp_type, "{recipe}");
    }
}
