use mfgenus::report::GenusReport;
use mfgenus_cli::{run, Outcome};

fn mfgenus(args: &[&str]) -> Outcome {
    run(std::iter::once("mfgenus").chain(args.iter().copied()))
}

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("mfgenus-cli-{}-{name}", std::process::id()))
}

#[test]
fn invariants_of_projective_plane() {
    let out = mfgenus(&["invariants", "P2", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = GenusReport::from_json(&out.stdout).unwrap();
    assert_eq!(r.ty_display.as_deref(), Some("1 - y + y^2"));
    assert_eq!(r.ty, Some(vec![1, -1, 1]));
    assert_eq!(r.c1.n_max, Some(3));
    let text = mfgenus(&["invariants", "P2"]);
    assert!(text.stdout.contains("T_y = 1 - y + y^2"));
    assert!(text.stdout.contains("N_max = 3"));
}

#[test]
fn rigidity_at_level_three() {
    let out = mfgenus(&["rigidity", "P2", "--level", "3", "--qorder", "2", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r = GenusReport::from_json(&out.stdout).unwrap();
    assert_eq!(r.rigidity_constant, Some(Default::default()));
    assert!(r.all_passed());
    assert!(mfgenus(&["rigidity", "P2", "--level", "3", "--qorder", "2"]).stdout.contains("rigid, constant 0"));
}

#[test]
fn rigidity_exit_codes() {
    let forced = mfgenus(&["rigidity", "P2", "--level", "2", "--qorder", "1", "--force"]);
    assert_eq!(forced.code, 1);
    let refused = mfgenus(&["rigidity", "P2", "--level", "2", "--qorder", "1"]);
    assert_eq!(refused.code, 2);
    assert!(refused.stderr.contains("NotDivisible"));
}

#[test]
fn dependent_rays_are_an_input_error() {
    let path = temp_path("dependent.json");
    std::fs::write(&path, r#"{"rank":2,"rays":[[1,0],[2,0]],"maximal_simplices":[{"rays":[1,2]}]}"#).unwrap();
    let out = mfgenus(&["validate", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("DependentRays"), "{}", out.stderr);
}

#[test]
fn build_then_validate() {
    let path = temp_path("bundle.json");
    let p = path.to_str().unwrap();
    assert_eq!(mfgenus(&["build", "bundle:n=3,r=1,k=1,-2", "-o", p]).code, 0);
    let v = mfgenus(&["validate", p, "--json"]);
    let c = mfgenus(&["classify", p]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v.code, 0);
    let r = GenusReport::from_json(&v.stdout).unwrap();
    assert!(r.complete && r.nonsingular);
    assert!(c.stdout.contains("OverProjectiveLine, twists [2, 3]"), "{}", c.stdout);
}

#[test]
fn report_json_round_trips_and_is_deterministic() {
    let args = ["orbifold", "P2modB:2", "--sigma", "1/5", "--qorder", "1", "--json"];
    let a = mfgenus(&args);
    let b = mfgenus(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let r = GenusReport::from_json(&a.stdout).unwrap();
    assert_eq!(GenusReport::from_json(&r.to_json()).unwrap(), r);
    assert_eq!(r.series[0].granularity, 2);
    for row in r.series[0].coefficients.values() {
        for c in row.values() {
            assert_eq!(c, &mfgenus::report::CycloValue::from_number(&c.to_number().unwrap()));
        }
    }
}

#[test]
fn crosscheck_and_dh_pass() {
    assert_eq!(mfgenus(&["crosscheck", "P1", "--sigma", "1/5", "--qorder", "2", "--window", "4"]).code, 0);
    let orb = mfgenus(&["crosscheck", "P2modB:2", "--sigma", "1/5", "--qorder", "1", "--window", "3", "--orbifold"]);
    assert_eq!(orb.code, 0, "{}", orb.stderr);
    assert_eq!(mfgenus(&["dh", "P2", "--class", "1,2,0", "--window", "5"]).code, 0);
    assert_eq!(mfgenus(&["dh", "P1", "--class", "2,1", "--window", "4", "--json"]).code, 0);
}

#[test]
fn elliptic_needs_an_angle() {
    let out = mfgenus(&["elliptic", "P1"]);
    assert_eq!(out.code, 2);
    assert_eq!(mfgenus(&["elliptic", "P1", "--level", "2"]).code, 0);
    let bad = mfgenus(&["elliptic", "P2", "--sigma", "1/3", "--vector", "1,0"]);
    assert!(bad.stderr.contains("NotGeneric"));
}

#[test]
fn usage_errors() {
    assert_eq!(mfgenus(&["frobnicate"]).code, 2);
    assert_eq!(mfgenus(&["invariants", "Q7"]).code, 2);
    assert_eq!(mfgenus(&["--help"]).code, 0);
}

#[test]
fn character_lists_entries() {
    let out = mfgenus(&["character", "P1", "--sigma", "1/5", "--qorder", "1", "--window", "2", "--json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
}
