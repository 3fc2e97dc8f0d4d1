use serde_json::Value;
use weilkit::cli::run;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("weilkit").chain(args.iter().copied()));
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", out.stdout, out.stderr));
    (out.code, v)
}

#[test]
fn holonomy_table_matches_the_cocycle() {
    let (code, v) = json(&["holonomy", &fixture("z4_mod2_bundle.json"), "--object", "*"]);
    assert_eq!(code, 0);
    let hol: Vec<&str> = v["table"].as_array().unwrap().iter().map(|r| r["holonomy"].as_str().unwrap()).collect();
    assert_eq!(hol, ["0", "1", "0", "1"]);
    assert_eq!(v["trivial"], false);

    let (_, v) = json(&["holonomy", &fixture("z4_trivial_bundle.json"), "--object", "*"]);
    assert_eq!(v["trivial"], true);
}

#[test]
fn groupoid_cohomology_dimensions() {
    let dims = |name: &str| -> Vec<u64> {
        let (code, v) = json(&["--level-bound", "3", "cohomology", &fixture(name)]);
        assert_eq!(code, 0);
        v["degrees"].as_array().unwrap().iter().map(|d| d["dimension"].as_u64().unwrap()).collect()
    };
    assert_eq!(dims("z2_groupoid.json"), [1, 0, 0]);
    assert_eq!(dims("pair3_groupoid.json"), [1, 0, 0]);
    assert_eq!(dims("s3_groupoid.json"), [1, 0, 0]);
}

#[test]
fn chern_weil_cocycle_round_trips_as_a_document() {
    let (code, v) = json(&["chern-weil", &fixture("u1_eta.json"), &fixture("u1_xi.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["closed"], true);
    let doc = serde_json::to_string(&v["cocycle"]).unwrap();
    let parsed = weilkit::io::parse_document(&doc).unwrap();
    assert_eq!(parsed.kind(), "cocycle");
}

#[test]
fn seed_does_not_change_deterministic_reports() {
    let a = run(["weilkit", "--seed", "1", "bianchi", &fixture("so3_eta.json")]);
    let b = run(["weilkit", "--seed", "99", "bianchi", &fixture("so3_eta.json")]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn latex_output_is_balanced() {
    let out = run(["weilkit", "--format", "latex", "chern-weil", &fixture("so3_eta.json"), &fixture("so3_killing.json")]);
    assert_eq!(out.code, 0);
    let s = &out.stdout;
    assert!(s.contains("\\begin{description}"));
    for env in ["description", "itemize"] {
        assert_eq!(s.matches(&format!("\\begin{{{env}}}")).count(), s.matches(&format!("\\end{{{env}}}")).count());
    }
    assert_eq!(s.matches('{').count(), s.matches('}').count());
    assert!(!s.contains("\\item ["));
}

#[test]
fn input_errors_exit_with_two() {
    let missing = run(["weilkit", "validate", "/nonexistent/x.json"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("parse error"));

    let malformed = run(["weilkit", "validate", &fixture("malformed.json")]);
    assert_eq!(malformed.code, 2);
    assert!(malformed.stderr.contains("line"));

    let wrong_kind = run(["weilkit", "holonomy", &fixture("so3.json"), "--object", "*"]);
    assert_eq!(wrong_kind.code, 2);

    let usage = run(["weilkit", "no-such-command"]);
    assert_eq!(usage.code, 2);
}

#[test]
fn failed_checks_exit_with_one() {
    let jacobi = run(["weilkit", "validate", &fixture("bad_jacobi.json")]);
    assert_eq!(jacobi.code, 1);
    assert!(jacobi.stdout.contains("Jacobi") || jacobi.stderr.contains("Jacobi"));

    let not_invariant = run(["weilkit", "chern-weil", &fixture("so3_eta.json"), &fixture("so3_not_invariant.json")]);
    assert_eq!(not_invariant.code, 1);
}
