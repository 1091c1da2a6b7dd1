use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mackeykit"))
        .args(args)
        .env("MACKEYKIT_NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("one JSON object")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mackeykit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn marks_of_c2() {
    let o = run(&["marks", "--group", "C2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"schema_version\":1,\"marks\":[[2,0],[1,1]]}\n"
    );
}

#[test]
fn bpq_trivial() {
    let o = run(&["bpq", "--group", "trivial", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["iso"][0]["matrix"], serde_json::json!([[1]]));
}

#[test]
fn bpq_s3_text() {
    let o = run(&["bpq", "--group", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass  isomorphism of Green functors"));
}

#[test]
fn frobenius_violation_is_reported() {
    let o = run(&[
        "green-check",
        &data("c2_frobenius_violation.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    let check = &v["checks"][0];
    assert_eq!(check["name"], "axiom Frobenius");
    assert_eq!(check["passed"], false);
    assert!(check["detail"].as_str().unwrap().contains("tr e -> C2"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["marks", "--group", "Q9"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["mackey-check", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["compose", "--format", "json"]).status.code(), Some(2));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = [
        "compose", "--group", "S3", "--seed", "11", "--trials", "10", "--format", "json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["promonoidal-check", "--group", "C2"]);
    assert_eq!(
        c.stdout,
        run(&["promonoidal-check", "--group", "C2"]).stdout
    );
}

#[test]
fn emitted_functors_reload() {
    let out = tmp("box.json");
    let o = run(&[
        "box",
        &data("c2_fp_z2.json"),
        &data("c2_fp_perm.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let again = run(&["mackey-check", out.to_str().unwrap(), "--format", "json"]);
    assert_eq!(again.status.code(), Some(0));
    let levels = &json(&again)["levels"];
    assert_eq!(levels[0]["invariant_factors"], serde_json::json!([2, 2]));

    let green = tmp("k0.json");
    let o = run(&["bpq", "--group", "C3", "--out", green.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        run(&["green-check", green.to_str().unwrap()]).status.code(),
        Some(0)
    );

    let canon = tmp("canon.json");
    run(&[
        "mackey-check",
        &data("c2_burnside.json"),
        "--out",
        canon.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read_to_string(&canon).unwrap(),
        std::fs::read_to_string(data("c2_burnside.json")).unwrap()
    );
}

#[test]
fn tor_and_spectral_sequence() {
    let o = run(&[
        "tor",
        &data("c2_burnside_green.json"),
        &data("c2_module_z2.json"),
        &data("c2_module_perm.json"),
        "--pmax",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["tor"].as_array().unwrap().len(), 3);
    let o = run(&["ss", &data("c2_complex.json"), "--rmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("inf  0  0  C2     Z/2"));
}

#[test]
fn spans_compose() {
    let o = run(&[
        "compose",
        &data("c2_span_free_to_point.json"),
        &data("c2_span_point_to_free.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let terms = json(&o)["terms"].as_array().unwrap().clone();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t["coefficient"] == 2));
}

#[test]
fn group_queries() {
    let v = json(&run(&[
        "group-info",
        "--group",
        "C2xC2",
        "--format",
        "json",
    ]));
    assert_eq!(v["class_count"], 5);
    let v = json(&run(&[
        "burnside-ring",
        "--group",
        "C2",
        "--format",
        "json",
    ]));
    assert_eq!(v["table"][0][0], serde_json::json!([2, 0]));
    let v = json(&run(&[
        "hom-basis",
        "--group",
        "S3",
        "e",
        "C2",
        "--format",
        "json",
    ]));
    assert_eq!(v["rank"], 3);
    let o = run(&["duality-check", "--group", "C2xC2"]);
    assert_eq!(o.status.code(), Some(0));
}
