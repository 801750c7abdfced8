use std::path::PathBuf;

use serde_json::Value;
use seshadri_cli::report::Report;
use seshadri_cli::{run, Output, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_IO, EXIT_OK};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn json(out: &Output) -> Value {
    assert!(out.stderr.is_empty() || out.code != EXIT_OK, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", out.stdout))
}

#[test]
fn seshadri_on_exe() {
    let out = run(["seshadri", "seshadri", "--surface", &fixture("exe.surface.json"), "--divisor", "1,1,0", "--box", "10"]);
    assert_eq!(out.code, EXIT_OK);
    let r = json(&out);
    assert_eq!(r["surface"], "ExE");
    assert_eq!(r["command"], "seshadri");
    assert_eq!(r["exit"], 0);
    let res = &r["results"];
    assert_eq!(res["lower"]["text"], "1");
    assert_eq!(res["upper"]["text"], "1");
    assert_eq!(res["witness"], "F1");
    assert_eq!(res["exact"], true);
    assert_eq!(res["lower"]["enclosure"][0], res["lower"]["enclosure"][1]);
}

#[test]
fn bundled_fixture_names_resolve_without_a_path() {
    let out = run(["seshadri", "fibration-scan", "--surface", "p2.surface.json", "--box", "10"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(json(&out)["results"]["candidates"], Value::Array(vec![]));
}

#[test]
fn fibration_scan_on_blowup() {
    let out = run(["seshadri", "fibration-scan", "--surface", "P2-blowup", "--box", "6"]);
    let r = json(&out);
    let c = r["results"]["candidates"].as_array().unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0]["class"]["text"], "(1, -1)");
    assert_eq!(c[0]["fiber_curve"], "line-through-point");
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let argv = ["seshadri", "criteria", "--surface", "ExE", "--divisor", "1,2,0", "--box", "5"];
    let a = run(argv);
    let b = run(argv);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let parsed: Report = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(parsed.to_json(), a.stdout);
    let r = json(&a);
    assert_eq!(r["results"]["cc"]["fires"], true);
    assert_eq!(r["results"]["cc"]["candidate"]["class"]["text"], "(0, 1, 0)");
    assert_eq!(r["results"]["t2"]["overall"]["case"], "DelegatedToCc");
}

#[test]
fn irrational_divisor_analysis() {
    let out = run(["seshadri", "analyze", "--surface", "ExE", "--divisor", "sqrt2, sqrt3, 2sqrt3 - 3sqrt2"]);
    let r = json(&out);
    assert_eq!(r["results"]["self_intersection"]["text"], "0");
    assert_eq!(r["results"]["nef"]["status"], "Certified");
    assert_eq!(r["results"]["ample"]["status"], "Refuted");
    assert_eq!(r["results"]["ray"], "Irrational");
}

#[test]
fn json_divisor_input() {
    let out = run(["seshadri", "mult", "--surface", "ExE", "--divisor", r#"["1","1","0"]"#, "--box", "5"]);
    let r = json(&out);
    assert_eq!(r["results"]["lower"]["text"], "2");
    assert_eq!(r["results"]["upper"]["text"], "4");
    assert_eq!(r["results"]["formula"]["text"], "3/2");
}

#[test]
fn family_demo_rows() {
    let out = run([
        "seshadri", "family-demo", "--surface", "C1xC2", "--fiber", "1,0", "--ample", "1,1", "--alpha", "1/2", "--n", "5",
    ]);
    let r = json(&out);
    let rows = r["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|row| row["eps_at_most_one"] == true && row["m_lower_at_least_n"] == true));
    assert_eq!(rows[5]["class"]["text"], "(11/2, 1/2)");
}

#[test]
fn mx_scan_on_p2() {
    let out = run(["seshadri", "mx-scan", "--surface", "P2", "--degree", "5", "--box", "10"]);
    let r = json(&out);
    assert_eq!(r["results"]["exceeds_two"], false);
    assert_eq!(r["results"]["best_m_lower"]["text"], "1");
}

#[test]
fn blowup_writes_a_loadable_surface() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bl.surface.json");
    let p = path.to_string_lossy().into_owned();
    let out = run(["seshadri", "blowup", "--surface", "ExE", "--out", &p]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(json(&out)["results"]["rank"], 4);
    let again = run(["seshadri", "analyze", "--surface", &p, "--divisor", "2,2,0,-1"]);
    assert_eq!(again.code, EXIT_OK, "{}", again.stderr);
    assert_eq!(json(&again)["results"]["ample"]["status"], "Certified");
}

#[test]
fn text_output() {
    let out = run(["seshadri", "--format", "text", "seshadri", "--surface", "ExE", "--divisor", "1,1,0"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("witness: F1"), "{}", out.stdout);
    assert!(out.stdout.contains("time:"));
}

#[test]
fn input_errors_exit_one() {
    let out = run(["seshadri", "analyze", "--surface", "ExE", "--divisor", "1,1"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("dimension mismatch"));
    assert_eq!(run(["seshadri", "analyze", "--surface", "ExE", "--divisor", "1,x,0"]).code, EXIT_INPUT);
    assert_eq!(run(["seshadri", "seshadri", "--surface", "ExE", "--divisor", "1,0,0"]).code, EXIT_INPUT);
    assert_eq!(run(["seshadri", "no-such-command"]).code, EXIT_INPUT);
}

#[test]
fn missing_surface_exits_three() {
    let out = run(["seshadri", "fibration-scan", "--surface", "/nonexistent/k3.surface.json"]);
    assert_eq!(out.code, EXIT_IO);
    assert!(out.stdout.is_empty());
}

#[test]
fn unfound_candidate_exits_two() {
    // a catalogue whose only moving curve is the isotropic class (6, -2, 3), outside box 2
    let text = std::fs::read_to_string(fixture("exe.surface.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["name"] = "ExE-far-fibre".into();
    v["curves"] = serde_json::json!([{
        "label": "G3",
        "cls": ["6", "-2", "3"],
        "mult_eta": 1,
        "irreducible": true,
        "moving": true
    }]);
    v["complete_up_to"] = "0".into();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("far.surface.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let p = path.to_string_lossy().into_owned();

    let out = run(["seshadri", "criteria", "--surface", &p, "--divisor", "13,-4,6", "--box", "2"]);
    assert_eq!(out.code, EXIT_INCONSISTENT, "{}", out.stdout);
    let r = json(&out);
    assert_eq!(r["exit"], 2);
    assert!(r["caveats"][0].as_str().unwrap().contains("increase box"));

    let out = run(["seshadri", "criteria", "--surface", &p, "--divisor", "13,-4,6", "--box", "6"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
}
