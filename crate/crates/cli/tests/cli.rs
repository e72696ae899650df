use std::process::{Command, Output};

use odosym::report::RunReport;
use serde_json::Value;

fn odosym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odosym")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> RunReport {
    serde_json::from_slice(&out.stdout).expect("stdout is a run report")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn classify_klein_four() {
    let out = odosym(&["classify", "--matrix", "2,1;0,3"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r.schema, 1);
    assert_eq!(r.result["branch"], "klein_four");
    assert_eq!(r.result["finite"], true);
    assert_eq!(r.result["generators"].as_array().unwrap().len(), 4);
}

#[test]
fn member_exit_codes() {
    assert_eq!(code(&odosym(&["member", "--base", "2,-1;1,5", "--matrix", "1,0;0,1"])), 0);
    let out = odosym(&["member", "--base", "2,-1;1,5", "--matrix", "0,1;1,0"]);
    assert_eq!(code(&out), 3);
    assert_eq!(report(&out).result["member"], false);
    assert_eq!(code(&odosym(&["member", "--base", "2,-1;1,5", "--matrix", "-2,-1;1,1"])), 0);
}

#[test]
fn nc_certificates() {
    let out = odosym(&["nc", "--base", "2,0;0,2", "--matrix", "0,1;1,0", "--depth", "4"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r.result["passes"], true);
    let certs = r.result["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 4);
    assert_eq!(certs[3]["modulus"], 256);
    let out = odosym(&["nc", "--base", "2,-1;1,3", "--matrix", "1,1;0,1", "--depth", "3"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn nl_verdicts() {
    let out = odosym(&["nl", "--L", "2,0;0,4", "--M", "1,2;0,1", "--nmax", "8"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r.result["verdict"], "accepted");
    assert_eq!(r.result["k"], 0);
    let out = odosym(&["nl", "--L", "2,0;0,4", "--M", "1,0;1,1"]);
    assert_eq!(code(&out), 3);
    assert_eq!(report(&out).result["reason"], "non_integral_conjugate");
    let out = odosym(&["nl", "--L", "0,3;1,0", "--M", "1,0;0,-1"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn phi_on_half_hex() {
    let out = odosym(&["phi", "--L", "2,0;0,2", "--F", "0,0;1,0;0,1;1,-1", "--M", "0,1;1,0", "--box", "-4:4"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r.result["maps_fixed_points"], true);
    assert_eq!(r.result["patch"].as_array().unwrap().len(), 81);
}

#[test]
fn subst_patch_from_file_with_svg() {
    let dir = std::env::temp_dir().join(format!("odosym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("hh.json");
    let table = r#"{"L": [[2,0],[0,2]], "F1": [[0,0],[1,0],[0,1],[1,-1]],
        "table": [{"letter": 0, "image": [0,2,0,1]}, {"letter": 1, "image": [1,2,0,1]}, {"letter": 2, "image": [2,2,0,1]}]}"#;
    std::fs::write(&spec, table).unwrap();
    let svg = dir.join("p.svg");
    let out = odosym(&[
        "subst", "patch", "--subst", spec.to_str().unwrap(), "--seed", "2", "--box", "0:3",
        "--svg", svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r.result["missing"], 0);
    assert_eq!(r.result["patch"].as_array().unwrap().len(), 16);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn digit_patch_matches_table_patch_after_relabelling() {
    let digit = report(&odosym(&["subst", "patch", "--L", "2,0;0,2", "--F", "0,0;1,0;0,1;1,-1", "--seed", "1,0", "--box", "-8:8"]));
    let cells = digit.result["patch"].as_array().unwrap();
    assert_eq!(cells.len(), 17 * 17);
    let at = |x: i64, y: i64| cells.iter().find(|c| c["at"] == serde_json::json!([x, y])).unwrap()["letter"].clone();
    assert_eq!(at(0, 0), serde_json::json!([1, 0]));
    assert_eq!(at(3, 0), serde_json::json!([1, 0]));
    assert_eq!(at(0, 2), serde_json::json!([0, 1]));
}

#[test]
fn parse_errors_cite_token() {
    let out = odosym(&["classify", "--matrix", "2,x;0,3"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("\"x\"") && err.contains("position 2"), "{err}");
    assert_eq!(code(&odosym(&["classify"])), 2);
    assert_eq!(code(&odosym(&["classify", "--matrix", "1,0;0,1"])), 2);
}

#[test]
fn reports_round_trip_and_hash_deterministically() {
    let args = ["classify", "--matrix", "2,-1;1,5"];
    let (a, b) = (odosym(&args), odosym(&args));
    let (ra, rb) = (report(&a), report(&b));
    assert_eq!(ra.certificate_hash, rb.certificate_hash);
    assert!(ra.verify_hash());
    let again: RunReport = serde_json::from_str(&serde_json::to_string(&ra).unwrap()).unwrap();
    assert_eq!(again, ra);
}

#[test]
fn out_file_and_pretty() {
    let path = std::env::temp_dir().join(format!("odosym-out-{}.json", std::process::id()));
    let out = odosym(&["classify", "--matrix", "6,1;0,2", "--pretty", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("conjugator: 1,0;4,1"), "{text}");
    let saved: RunReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved.result["branch"], "virtually_z");
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_paper_table() {
    let out = odosym(&["verify-paper"]);
    let r = report(&out);
    let rows = r.result["rows"].as_array().unwrap();
    let with = |s: &str| -> Vec<&str> {
        rows.iter().filter(|x| x["status"] == s).map(|x| x["label"].as_str().unwrap()).collect()
    };
    assert_eq!(with("open"), ["diag-2-4/1,1;0,1"]);
    // A listed matrix that does not commute with L, and a Klein four group listed as order two.
    assert_eq!(with("fail"), ["classify/2,-1;1,3", "classify/3,1;0,5"]);
    assert_eq!(code(&out), 3);
    let labels: Vec<&Value> = rows.iter().map(|x| &x["label"]).collect();
    let mut sorted = labels.clone();
    sorted.sort_by_key(|v| v.as_str().unwrap().to_string());
    assert_eq!(labels, sorted);
}
